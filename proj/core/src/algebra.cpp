#include "vnerg/algebra.hpp"

#include <cmath>
#include <string>

#include "vnerg/error.hpp"

namespace vnerg {

SubspaceBasis SubspaceBasis::span_of(Index n, const std::vector<Matrix>& spanning,
                                     const Tolerances& tol) {
  std::vector<Matrix> out;
  for (const Matrix& x : spanning) {
    require_dim(x, n, "spanning element");
    require_finite(x, "spanning element");
    const double scale = x.norm();
    if (scale == 0.0) continue;
    Matrix r = x;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Matrix& b : out) r -= hs_inner(b, r) * b;
    }
    const double rn = r.norm();
    if (rn <= std::sqrt(tol.nullspace_rel) * scale) continue;
    out.push_back(r / rn);
  }
  return SubspaceBasis(n, std::move(out));
}

SubspaceBasis SubspaceBasis::from_orthonormal(Index n, std::vector<Matrix> elements,
                                              const Tolerances& tol) {
  if (elements.size() > static_cast<std::size_t>(n * n)) {
    throw Error(ErrorKind::ValidationError, "more basis elements than n^2");
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    require_dim(elements[i], n, "basis element");
    require_finite(elements[i], "basis element");
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex g = hs_inner(elements[j], elements[i]);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(g - expected) > tol.eq_rtol) {
        throw Error(ErrorKind::ValidationError,
                    "basis elements " + std::to_string(j) + "," + std::to_string(i) +
                        " are not HS-orthonormal");
      }
    }
  }
  return SubspaceBasis(n, std::move(elements));
}

Matrix SubspaceBasis::projector_superop() const {
  Matrix p = Matrix::Zero(n_ * n_, n_ * n_);
  for (const Matrix& b : elements_) {
    const Vector v = vec(b);
    p += v * v.adjoint();
  }
  return p;
}

SubspaceBasis commutant(Index n, const std::vector<Matrix>& generators, const Tolerances& tol) {
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "commutant requires n >= 1");
  const Index n2 = n * n;
  Matrix system = Matrix::Zero(static_cast<Index>(generators.size()) * n2, n2);
  const Matrix id = identity(n);
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const Matrix& g = generators[k];
    require_dim(g, n, "commutant generator");
    require_finite(g, "commutant generator");
    // vec(x g - g x)
    system.middleRows(static_cast<Index>(k) * n2, n2) = kron(g.transpose(), id) - kron(id, g);
  }
  std::vector<Matrix> elements;
  if (generators.empty()) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) elements.push_back(matrix_unit(n, i, j));
    }
  } else {
    for (const Vector& v : null_space(system, tol)) elements.push_back(unvec(v, n));
  }
  return SubspaceBasis::span_of(n, elements, tol);
}

Matrix hs_project(const Matrix& x, const SubspaceBasis& basis) {
  require_dim(x, basis.dim(), "hs_project input");
  Matrix out = Matrix::Zero(basis.dim(), basis.dim());
  for (const Matrix& b : basis.elements()) out += hs_inner(b, x) * b;
  return out;
}

double hs_residual(const Matrix& x, const SubspaceBasis& basis) {
  return (x - hs_project(x, basis)).norm();
}

bool is_star_algebra(const SubspaceBasis& basis, const Tolerances& tol) {
  const auto member = [&](const Matrix& candidate) {
    return hs_residual(candidate, basis) <= tol.eq_rtol * (1.0 + candidate.norm());
  };
  const auto& els = basis.elements();
  for (const Matrix& b : els) {
    if (!member(b.adjoint())) return false;
  }
  for (const Matrix& a : els) {
    for (const Matrix& b : els) {
      if (!member(a * b)) return false;
    }
  }
  return true;
}

}  // namespace vnerg
