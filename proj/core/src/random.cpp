#include "vnerg/random.hpp"

#include <cmath>
#include <numeric>

namespace vnerg {

Matrix random_ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re * s, im * s);
    }
  }
  return g;
}

Matrix random_unitary(Index n, Rng& rng) {
  const Matrix g = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

Matrix random_diagonal_unitary(Index n, Rng& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  Matrix u = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) u(k, k) = std::polar(1.0, phase(rng));
  return u;
}

Matrix random_psd(Index n, Index rank, Rng& rng) {
  const Matrix g = random_ginibre(n, rank, rng);
  return g * g.adjoint();
}

Matrix random_density(Index n, Rng& rng) {
  Matrix p = random_psd(n, n, rng) + 0.05 * identity(n);
  p = (p + p.adjoint()) / 2.0;
  return p / p.trace().real();
}

Matrix random_contraction_element(Index n, Rng& rng) {
  const Matrix g = random_ginibre(n, n, rng);
  return g / op_norm(g);
}

std::vector<double> random_probabilities(std::size_t k, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(k);
  for (auto& v : p) v = expo(rng);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= total;
  return p;
}

}  // namespace vnerg
