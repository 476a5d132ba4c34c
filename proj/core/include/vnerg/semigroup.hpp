#pragma once

// Heisenberg-picture Lindblad semigroups tau_t = exp(t L) and their Abel averages
// s_lambda = lambda int_0^inf e^{-lambda t} tau_t dt.
//
// In finite dimension t -> tau_t is norm continuous, so no continuity
// hypotheses need checking.

#include <vector>

#include "vnerg/ergodic.hpp"
#include "vnerg/quantum_map.hpp"

namespace vnerg {

class LindbladGenerator {
 public:
  // L(x) = i[H, x] + sum_j (L_j* x L_j - 1/2 {L_j* L_j, x}).
  LindbladGenerator(Matrix hamiltonian, std::vector<Matrix> jumps, const Tolerances& tol = {});

  // Accepts a raw superoperator only if it annihilates I, preserves
  // hermiticity and is conditionally completely positive (projected Choi
  // matrix PSD); throws ValidationError otherwise.
  static LindbladGenerator from_superop(const Matrix& superop, const Tolerances& tol = {});

  Index dim() const { return n_; }
  const Matrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<Matrix>& jumps() const { return jumps_; }
  const Matrix& superop() const { return superop_; }

  // Trace adjoint of L applied to rho (Schroedinger picture).
  Matrix apply_predual(const Matrix& rho) const;

 private:
  LindbladGenerator() = default;

  Index n_ = 0;
  Matrix hamiltonian_;
  std::vector<Matrix> jumps_;
  Matrix superop_;
};

QuantumMap evolve(const LindbladGenerator& gen, double t);

// lambda (lambda - L)^{-1}.
QuantumMap abel_average(const LindbladGenerator& gen, double lambda);

// Max entry difference between abel_average and composite Simpson quadrature of
// lambda e^{-lambda t} tau_t over [0, t_max] with `steps` panels.  Requires
// lambda * t_max >= 20.
double abel_quadrature_residual(const LindbladGenerator& gen, double lambda, double t_max,
                                int steps);

struct SemigroupResult {
  ErgodicDecomposition decomposition;
  std::vector<ProfilePoint> profile;
};

// Requires phi invariant: L_*(rho) = 0 within eq_rtol, else NotInvariant.
SemigroupResult semigroup_expectation(const LindbladGenerator& gen, const StandardForm& sf,
                                      const std::vector<double>& lambda_list,
                                      const std::vector<Functional>& psi);

// Invariant density of the semigroup: I/n projected onto ker L_*.
Matrix invariant_density(const LindbladGenerator& gen, const Tolerances& tol = {});

}  // namespace vnerg
