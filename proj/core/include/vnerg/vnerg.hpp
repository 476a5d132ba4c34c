#pragma once

#include "vnerg/algebra.hpp"
#include "vnerg/amenable.hpp"
#include "vnerg/ergodic.hpp"
#include "vnerg/error.hpp"
#include "vnerg/linalg.hpp"
#include "vnerg/quantum_map.hpp"
#include "vnerg/random.hpp"
#include "vnerg/semigroup.hpp"
#include "vnerg/standard_form.hpp"
