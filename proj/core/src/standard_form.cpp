#include "vnerg/standard_form.hpp"

#include <algorithm>
#include <cmath>

#include "vnerg/error.hpp"

namespace vnerg {

State State::from_density(const Matrix& rho, const Tolerances& tol) {
  tol.validate();
  require_square(rho, "density matrix");
  require_finite(rho, "density matrix");
  if (!psd_check(rho, tol)) throw Error(ErrorKind::NotPSD, "density matrix is not PSD");
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tol.eq_rtol) {
    throw Error(ErrorKind::ValidationError, "density matrix must have unit trace");
  }
  const Matrix h = (rho + rho.adjoint()) / 2.0;
  if (min_hermitian_eigenvalue(h) <= tol.psd_floor) {
    throw Error(ErrorKind::NotFaithful, "state has an eigenvalue at or below psd_floor");
  }
  State s;
  s.rho_ = h;
  s.tol_ = tol;
  s.sqrt_ = frac_power(h, 0.5, tol);
  s.inv_sqrt_ = frac_power(h, -0.5, tol);
  s.quarter_ = frac_power(h, 0.25, tol);
  s.inv_quarter_ = frac_power(h, -0.25, tol);
  return s;
}

State State::tracial(Index n, const Tolerances& tol) {
  return from_density(identity(n) / static_cast<double>(n), tol);
}

Complex State::operator()(const Matrix& x) const {
  require_dim(x, dim(), "state argument");
  return (rho_ * x).trace();
}

Functional::Functional(Matrix sigma) : sigma_(std::move(sigma)) {
  require_square(sigma_, "functional representer");
  require_finite(sigma_, "functional representer");
}

Complex Functional::operator()(const Matrix& x) const {
  require_dim(x, dim(), "functional argument");
  return (sigma_ * x).trace();
}

StandardForm::StandardForm(State state) : state_(std::move(state)) {
  const Index n = dim();
  const Tolerances& tol = tolerances();
  const Matrix& rho = state_.rho();
  // Delta^{1/2}(a) = rho^{1/2} a rho^{-1/2}
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Matrix x = matrix_unit(n, i, j);
      const Matrix xz = gns_embed(x);
      const Matrix tomita = modular_conj(state_.sqrt() * xz * state_.inv_sqrt());
      tomita_residual_ = std::max(tomita_residual_, (tomita - gns_embed(x.adjoint())).norm());
      for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < n; ++l) {
          const Matrix y = matrix_unit(n, k, l);
          const Complex lhs = hs_inner(xz, gns_embed(y));
          const Complex rhs = (rho * x.adjoint() * y).trace();
          isometry_residual_ = std::max(isometry_residual_, std::abs(lhs - rhs));
        }
      }
    }
  }
  if (isometry_residual_ > tol.eq_rtol || tomita_residual_ > tol.eq_rtol) {
    throw Error(ErrorKind::ValidationError, "standard form failed its construction audit");
  }
}

Matrix StandardForm::gns_embed(const Matrix& x) const {
  require_dim(x, dim(), "gns_embed input");
  return x * state_.sqrt();
}

Matrix StandardForm::gns_unembed(const Matrix& a) const {
  require_dim(a, dim(), "gns_unembed input");
  return a * state_.inv_sqrt();
}

Matrix StandardForm::modular_apply(const Matrix& a, Complex s) const {
  require_dim(a, dim(), "modular_apply input");
  if (s.real() != 0.0 && s.imag() != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "modular_apply takes real or purely imaginary s");
  }
  const Matrix left = frac_power(state_.rho(), s, tolerances());
  const Matrix right = frac_power(state_.rho(), -s, tolerances());
  return left * a * right;
}

Matrix StandardForm::modular_group(const Matrix& x, double t) const {
  return modular_apply(x, Complex(0.0, t));
}

Matrix StandardForm::modular_conj(const Matrix& a) const {
  require_dim(a, dim(), "modular_conj input");
  return a.adjoint();
}

Matrix StandardForm::modular_operator() const {
  return sandwich_superop(state_.rho(), frac_power(state_.rho(), -1.0, tolerances()));
}

bool StandardForm::cone_member(const Matrix& a) const { return cone_member(a, tolerances()); }

bool StandardForm::cone_member(const Matrix& a, const Tolerances& tol) const {
  require_dim(a, dim(), "cone_member input");
  return psd_check(state_.inv_quarter() * a * state_.inv_quarter(), tol);
}

Functional StandardForm::vector_functional(const Matrix& c1, const Matrix& c2) const {
  require_dim(c1, dim(), "vector_functional c1");
  require_dim(c2, dim(), "vector_functional c2");
  return Functional(state_.sqrt() * c2 * c1.adjoint() * state_.sqrt());
}

}  // namespace vnerg
