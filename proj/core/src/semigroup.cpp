#include "vnerg/semigroup.hpp"

#include <algorithm>
#include <cmath>

#include "vnerg/error.hpp"

namespace vnerg {

namespace {

Matrix gns_generator(const Matrix& superop, const StandardForm& sf) {
  const Matrix id = identity(sf.dim());
  return sandwich_superop(id, sf.state().sqrt()) * superop *
         sandwich_superop(id, sf.state().inv_sqrt());
}

}  // namespace

LindbladGenerator::LindbladGenerator(Matrix hamiltonian, std::vector<Matrix> jumps,
                                     const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  require_square(hamiltonian_, "Hamiltonian");
  require_finite(hamiltonian_, "Hamiltonian");
  n_ = hamiltonian_.rows();
  if ((hamiltonian_ - hamiltonian_.adjoint()).norm() >
      tol.eq_rtol * std::max(1.0, hamiltonian_.norm())) {
    throw Error(ErrorKind::ValidationError, "Hamiltonian is not Hermitian");
  }
  const Matrix id = identity(n_);
  const Complex i(0.0, 1.0);
  superop_ = i * (sandwich_superop(hamiltonian_, id) - sandwich_superop(id, hamiltonian_));
  for (const Matrix& l : jumps_) {
    require_dim(l, n_, "jump operator");
    require_finite(l, "jump operator");
    const Matrix ll = l.adjoint() * l;
    superop_ += sandwich_superop(l.adjoint(), l) - 0.5 * sandwich_superop(ll, id) -
                0.5 * sandwich_superop(id, ll);
  }
  const double unit_image = unvec(superop_ * vec(id), n_).norm();
  if (unit_image > tol.eq_rtol * std::max(1.0, superop_.norm())) {
    throw Error(ErrorKind::ValidationError, "generator does not annihilate the identity");
  }
}

LindbladGenerator LindbladGenerator::from_superop(const Matrix& superop, const Tolerances& tol) {
  const QuantumMap as_map = QuantumMap::from_superop(superop);
  const Index n = as_map.dim();
  const Matrix id = identity(n);
  const double scale = std::max(1.0, superop.norm());
  if (as_map(id).norm() > tol.eq_rtol * scale) {
    throw Error(ErrorKind::ValidationError, "generator does not annihilate the identity");
  }
  if ((as_map.star_conjugated().superop() - superop).norm() > tol.eq_rtol * scale) {
    throw Error(ErrorKind::ValidationError, "generator does not preserve hermiticity");
  }
  // Conditional complete positivity: Q C Q >= 0 with Q the complement of the
  // maximally entangled vector.
  Vector omega = vec(id) / std::sqrt(static_cast<double>(n));
  const Matrix q = Matrix::Identity(n * n, n * n) - omega * omega.adjoint();
  const Matrix c = choi(as_map);
  if (!psd_check(Matrix(q * c * q), tol)) {
    throw Error(ErrorKind::ValidationError, "generator is not conditionally completely positive");
  }
  LindbladGenerator g;
  g.n_ = n;
  g.hamiltonian_ = Matrix::Zero(n, n);
  g.superop_ = superop;
  return g;
}

Matrix LindbladGenerator::apply_predual(const Matrix& rho) const {
  return QuantumMap::from_superop(superop_).apply_predual(rho);
}

QuantumMap evolve(const LindbladGenerator& gen, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::InvalidArgument, "evolve needs finite t >= 0");
  }
  return QuantumMap::from_superop(matrix_exp(t * gen.superop()));
}

QuantumMap abel_average(const LindbladGenerator& gen, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::InvalidArgument, "abel_average needs finite lambda > 0");
  }
  const Index d = gen.superop().rows();
  const Matrix shifted = lambda * Matrix::Identity(d, d) - gen.superop();
  const Eigen::FullPivLU<Matrix> lu(shifted);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    throw Error(ErrorKind::SingularResolvent, "lambda - L is singular");
  }
  return QuantumMap::from_superop(lambda * lu.inverse());
}

double abel_quadrature_residual(const LindbladGenerator& gen, double lambda, double t_max,
                                int steps) {
  if (!(lambda > 0.0) || !(t_max > 0.0) || steps < 1) {
    throw Error(ErrorKind::InvalidArgument, "quadrature needs lambda > 0, t_max > 0, steps >= 1");
  }
  if (lambda * t_max < 20.0) {
    throw Error(ErrorKind::InvalidArgument, "lambda * t_max must be at least 20");
  }
  const Index d = gen.superop().rows();
  const double h = t_max / steps;
  const Matrix half_step = matrix_exp(0.5 * h * gen.superop());
  Matrix current = Matrix::Identity(d, d);
  Matrix integral = Matrix::Zero(d, d);
  const int nodes = 2 * steps;
  for (int k = 0; k <= nodes; ++k) {
    const double t = 0.5 * h * k;
    const double w = (k == 0 || k == nodes) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    integral += (w * lambda * std::exp(-lambda * t)) * current;
    current = current * half_step;
  }
  integral *= h / 6.0;
  return (abel_average(gen, lambda).superop() - integral).cwiseAbs().maxCoeff();
}

SemigroupResult semigroup_expectation(const LindbladGenerator& gen, const StandardForm& sf,
                                      const std::vector<double>& lambda_list,
                                      const std::vector<Functional>& psi) {
  if (gen.dim() != sf.dim()) throw Error(ErrorKind::DimensionMismatch, "generator and state dims");
  const Tolerances& tol = sf.tolerances();
  const Index n = sf.dim();
  const double drift = gen.apply_predual(sf.state().rho()).norm();
  if (drift > tol.eq_rtol * std::max(1.0, gen.superop().norm())) {
    throw Error(ErrorKind::NotInvariant, "state is not invariant under the semigroup");
  }
  const Matrix g = gns_generator(gen.superop(), sf);
  Matrix p = projector(null_space(g, tol), n * n);
  const Matrix p_adj = projector(null_space(g.adjoint(), tol), n * n);
  if ((p - p_adj).norm() > tol.eq_rtol * std::max(1.0, p.norm())) {
    throw Error(ErrorKind::ValidationError, "kernels of the GNS generator and its adjoint differ");
  }
  std::vector<Matrix> fixed;
  for (const Vector& v : null_space(gen.superop(), tol)) fixed.push_back(unvec(v, n));
  SemigroupResult result{
      make_decomposition(std::move(p), SubspaceBasis::span_of(n, fixed, tol), sf), {}};

  for (double lambda : lambda_list) {
    const QuantumMap s = abel_average(gen, lambda);
    const double gns = op_norm(gns_operator(s, sf) - result.decomposition.projection);
    for (std::size_t k = 0; k < psi.size(); ++k) {
      result.profile.push_back(
          {lambda, k, predual_distance(s, result.decomposition.expectation, psi[k]), gns});
    }
  }
  return result;
}

Matrix invariant_density(const LindbladGenerator& gen, const Tolerances&) {
  return kernel_density(QuantumMap::from_superop(gen.superop()).predual().superop(), gen.dim());
}

}  // namespace vnerg
