#pragma once

// Standard form of (M_n, phi) for a faithful state phi(x) = trace(rho x).
//
// The GNS space is M_n with the Hilbert-Schmidt inner product.  A vector is
// an n x n matrix a; pi(x) a = x a, the cyclic vector is zeta = rho^{1/2}, and
//   Delta(a) = rho a rho^{-1},   J(a) = a*.
// The commutant pi(M)' acts by right multiplication a -> a c; the element
// J y J of the commutant is the right multiplier c = y*.

#include "vnerg/linalg.hpp"

namespace vnerg {

class State {
 public:
  // Validates PSD, unit trace and faithfulness (min eigenvalue > psd_floor).
  static State from_density(const Matrix& rho, const Tolerances& tol = {});
  static State tracial(Index n, const Tolerances& tol = {});

  Index dim() const { return rho_.rows(); }
  const Matrix& rho() const { return rho_; }
  const Matrix& sqrt() const { return sqrt_; }
  const Matrix& inv_sqrt() const { return inv_sqrt_; }
  const Matrix& quarter() const { return quarter_; }
  const Matrix& inv_quarter() const { return inv_quarter_; }
  const Tolerances& tolerances() const { return tol_; }

  // phi(x) = trace(rho x).
  Complex operator()(const Matrix& x) const;

 private:
  State() = default;

  Matrix rho_;
  Matrix sqrt_;
  Matrix inv_sqrt_;
  Matrix quarter_;
  Matrix inv_quarter_;
  Tolerances tol_;
};

// Normal functional psi(x) = trace(sigma x); sigma need not be positive.
class Functional {
 public:
  explicit Functional(Matrix sigma);

  const Matrix& sigma() const { return sigma_; }
  Index dim() const { return sigma_.rows(); }
  Complex operator()(const Matrix& x) const;
  // Norm in M_*: the trace norm of sigma.
  double norm() const { return trace_norm(sigma_); }

 private:
  Matrix sigma_;
};

class StandardForm {
 public:
  // Verifies the GNS isometry and the Tomita relation J Delta^{1/2}(x zeta) = x* zeta
  // on all matrix units; throws ValidationError if either residual exceeds eq_rtol.
  explicit StandardForm(State state);

  const State& state() const { return state_; }
  Index dim() const { return state_.dim(); }
  Index gns_dim() const { return dim() * dim(); }
  const Tolerances& tolerances() const { return state_.tolerances(); }

  const Matrix& cyclic_vector() const { return state_.sqrt(); }

  // x zeta = x rho^{1/2}.
  Matrix gns_embed(const Matrix& x) const;
  // Inverse of gns_embed: a rho^{-1/2}.
  Matrix gns_unembed(const Matrix& a) const;

  // rho^s a rho^{-s}; s must be real or purely imaginary.
  Matrix modular_apply(const Matrix& a, Complex s) const;
  // sigma_t(x) = rho^{it} x rho^{-it}.
  Matrix modular_group(const Matrix& x, double t) const;
  // J a = a*.
  Matrix modular_conj(const Matrix& a) const;

  // Superoperator of Delta on vec(M_n).
  Matrix modular_operator() const;

  // Araki cone rho^{1/4} (PSD) rho^{1/4}.
  bool cone_member(const Matrix& a) const;
  bool cone_member(const Matrix& a, const Tolerances& tol) const;

  // psi(x) = <rho^{1/2} c1, x rho^{1/2} c2>, the vector functional of the
  // commutant elements with right multipliers c1, c2.
  Functional vector_functional(const Matrix& c1, const Matrix& c2) const;

  // Max residuals of the two construction-time checks, exposed for audits.
  double isometry_residual() const { return isometry_residual_; }
  double tomita_residual() const { return tomita_residual_; }

 private:
  State state_;
  double isometry_residual_ = 0.0;
  double tomita_residual_ = 0.0;
};

}  // namespace vnerg
