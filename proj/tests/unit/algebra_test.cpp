#include "vnerg/algebra.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "vnerg/error.hpp"
#include "vnerg/random.hpp"

namespace vnerg {
namespace {

using testing::diag;
using testing::pauli_x;
using testing::pauli_z;

// Brute-force commutant dimension: n^2 minus the rank of the stacked system,
// assembled entrywise and reduced by Gaussian elimination.
Index brute_commutant_dim(Index n, const std::vector<Matrix>& gens) {
  Matrix system = Matrix::Zero(static_cast<Index>(gens.size()) * n * n, n * n);
  Index row = 0;
  for (const Matrix& g : gens) {
    for (Index p = 0; p < n; ++p) {
      for (Index q = 0; q < n; ++q, ++row) {
        // (x g - g x)_{pq} = sum_k x_{pk} g_{kq} - g_{pk} x_{kq}
        for (Index k = 0; k < n; ++k) {
          system(row, p + k * n) += g(k, q);
          system(row, k + q * n) -= g(p, k);
        }
      }
    }
  }
  return n * n - testing::gauss_rank(system);
}

TEST(Commutant, Examples) {
  EXPECT_EQ(commutant(2, {}).size(), 4u);

  const std::vector<Matrix> z{diag({1.0, -1.0})};
  EXPECT_EQ(brute_commutant_dim(2, z), 2);
  const SubspaceBasis diagonal = commutant(2, z);
  ASSERT_EQ(diagonal.size(), 2u);
  for (const Matrix& b : diagonal.elements()) {
    EXPECT_NEAR(std::abs(b(0, 1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(b(1, 0)), 0.0, 1e-12);
  }

  const std::vector<Matrix> paulis{pauli_x(), pauli_z()};
  EXPECT_EQ(brute_commutant_dim(2, paulis), 1);
  const SubspaceBasis scalars = commutant(2, paulis);
  ASSERT_EQ(scalars.size(), 1u);
  EXPECT_LE(hs_residual(identity(2) / std::sqrt(2.0), scalars), 1e-12);
}

TEST(Commutant, DimensionMismatch) {
  EXPECT_THROW(commutant(2, {identity(3)}), Error);
}

TEST(Commutant, AgreesWithBruteForceAndContainsIdentity) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 3;
    std::vector<Matrix> gens;
    // Block-diagonal unitaries leave a nontrivial commutant.
    Matrix u = Matrix::Zero(n, n);
    u.topLeftCorner(1, 1) = random_unitary(1, rng);
    u.bottomRightCorner(n - 1, n - 1) = random_unitary(n - 1, rng);
    gens.push_back(u);
    if (trial % 2 == 0) gens.push_back(random_unitary(n, rng));
    const SubspaceBasis c = commutant(n, gens);
    EXPECT_EQ(static_cast<Index>(c.size()), brute_commutant_dim(n, gens));
    EXPECT_LE(hs_residual(identity(n) / std::sqrt(static_cast<double>(n)), c), 1e-10);
  }
}

TEST(IsStarAlgebra, Examples) {
  EXPECT_TRUE(is_star_algebra(commutant(2, {diag({1.0, -1.0})})));
  EXPECT_FALSE(is_star_algebra(SubspaceBasis::span_of(2, {matrix_unit(2, 0, 1)})));
  const SubspaceBasis sx = SubspaceBasis::span_of(2, {identity(2), pauli_x()});
  ASSERT_EQ(sx.size(), 2u);
  EXPECT_TRUE((pauli_x() * pauli_x()).isApprox(identity(2)));
  EXPECT_TRUE(is_star_algebra(sx));
}

TEST(IsStarAlgebra, CommutantOfSelfAdjointSetIsAlgebra) {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + trial % 3;
    const Matrix g = random_ginibre(n, n, rng);
    Matrix block = Matrix::Zero(n, n);
    block.topLeftCorner(n - 1, n - 1) = g.topLeftCorner(n - 1, n - 1);
    const std::vector<Matrix> gens{block, block.adjoint()};
    EXPECT_TRUE(is_star_algebra(commutant(n, gens)));
  }
}

TEST(HsProject, Examples) {
  const SubspaceBasis sx = SubspaceBasis::span_of(2, {identity(2), pauli_x()});
  const Matrix in_span = 2.0 * identity(2) - 3.0 * pauli_x();
  EXPECT_TRUE(approx_equal(hs_project(in_span, sx), in_span));
  EXPECT_LE(hs_project(pauli_z(), sx).norm(), 1e-14);
  const SubspaceBasis scalars = SubspaceBasis::span_of(2, {identity(2)});
  EXPECT_TRUE(approx_equal(hs_project(matrix_unit(2, 0, 0), scalars), identity(2) / 2.0));
}

TEST(HsProject, Idempotent) {
  Rng rng(2);
  const SubspaceBasis b = commutant(3, {testing::diag({1.0, 1.0, -1.0})});
  const Matrix x = random_ginibre(3, 3, rng);
  const Matrix once = hs_project(x, b);
  EXPECT_TRUE(approx_equal(hs_project(once, b), once));
}

TEST(Bicommutant, ContainsUnitalStarClosedSet) {
  Rng rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const Index n = 3;
    Matrix h = Matrix::Zero(n, n);
    h.topLeftCorner(2, 2) = random_psd(2, 2, rng);
    h(2, 2) = 0.7;
    const std::vector<Matrix> b{identity(n), h};
    const SubspaceBasis first = commutant(n, b);
    const SubspaceBasis second = commutant(n, first.elements());
    for (const Matrix& x : b) {
      EXPECT_LE(hs_residual(x, second), 1e-8 * (1.0 + x.norm()));
    }
  }
}

TEST(SubspaceBasis, FromOrthonormalValidates) {
  EXPECT_NO_THROW(SubspaceBasis::from_orthonormal(2, {matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)}));
  EXPECT_THROW(SubspaceBasis::from_orthonormal(2, {identity(2)}), Error);
}

}  // namespace
}  // namespace vnerg
