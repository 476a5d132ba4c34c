#pragma once

// Seeded random matrices for sampled checks and test batteries.

#include <cstdint>
#include <random>
#include <vector>

#include "vnerg/linalg.hpp"

namespace vnerg {

using Rng = std::mt19937_64;

// Complex Ginibre matrix, entries (a + bi)/sqrt(2) with a, b standard normal.
Matrix random_ginibre(Index rows, Index cols, Rng& rng);
// Haar unitary via QR of a Ginibre matrix with phase-corrected R.
Matrix random_unitary(Index n, Rng& rng);
// Diagonal unitary with uniform phases.
Matrix random_diagonal_unitary(Index n, Rng& rng);
// Wishart-type PSD matrix G G* of the given rank.
Matrix random_psd(Index n, Index rank, Rng& rng);
// Full-rank density matrix.
Matrix random_density(Index n, Rng& rng);
// Random element normalized to operator norm one.
Matrix random_contraction_element(Index n, Rng& rng);
// Probability vector from a flat Dirichlet.
std::vector<double> random_probabilities(std::size_t k, Rng& rng);

}  // namespace vnerg
