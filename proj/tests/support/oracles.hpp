#pragma once

// Test-only oracles, independent of the library's SVD/null-space paths.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "vnerg/linalg.hpp"

namespace vnerg::testing {

// Singular values as square roots of eig(A* A).
inline RealVector singular_values_by_gram(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  RealVector s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  return s;
}

// Rank by Gaussian elimination with partial pivoting.
inline Index gauss_rank(Matrix a, double tol = 1e-9) {
  Index rank = 0;
  for (Index col = 0; col < a.cols() && rank < a.rows(); ++col) {
    Index pivot = rank;
    for (Index r = rank; r < a.rows(); ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (std::abs(a(pivot, col)) < tol) continue;
    a.row(rank).swap(a.row(pivot));
    for (Index r = rank + 1; r < a.rows(); ++r) {
      a.row(r) -= (a(r, col) / a(rank, col)) * a.row(rank);
    }
    ++rank;
  }
  return rank;
}

// Direct matrix of x -> f(x) against matrix units, written without the library's vec helpers.
template <typename F>
Matrix brute_superop(Index n, F f) {
  Matrix s(n * n, n * n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      const Matrix out = f(e);
      for (Index q = 0; q < n; ++q) {
        for (Index p = 0; p < n; ++p) s(p + q * n, i + j * n) = out(p, q);
      }
    }
  }
  return s;
}

inline Matrix diag(std::initializer_list<Complex> values) {
  Matrix d = Matrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  Index k = 0;
  for (const Complex& v : values) d(k, k) = v, ++k;
  return d;
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_z() { return diag({1.0, -1.0}); }

inline Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

// Clock and shift on C^3 with omega = e^{2 pi i/3}: Z X = omega X Z.
inline Matrix shift3() {
  Matrix x = Matrix::Zero(3, 3);
  x(1, 0) = 1.0;
  x(2, 1) = 1.0;
  x(0, 2) = 1.0;
  return x;
}

inline Matrix clock3() {
  const Complex w = std::polar(1.0, 2.0 * M_PI / 3.0);
  return diag({1.0, w, w * w});
}

// Normalized Dirichlet kernel (1/(2n+1)) sum_{|k|<=n} e^{ik theta} in closed form.
inline double dirichlet(double theta, long n) {
  const double m = 2.0 * static_cast<double>(n) + 1.0;
  const double half = std::sin(theta / 2.0);
  if (std::abs(half) < 1e-15) return 1.0;
  return std::sin(m * theta / 2.0) / (m * half);
}

}  // namespace vnerg::testing
