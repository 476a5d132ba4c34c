#pragma once

// Subspaces of M_n with Hilbert-Schmidt orthonormal bases: commutants,
// *-algebra audits and HS projections.

#include <vector>

#include "vnerg/linalg.hpp"

namespace vnerg {

class SubspaceBasis {
 public:
  // Orthonormalizes `spanning` by modified Gram-Schmidt with one
  // re-orthogonalization pass; elements whose residual falls below
  // nullspace_rel-scaled tolerance are dropped as dependent.
  static SubspaceBasis span_of(Index n, const std::vector<Matrix>& spanning,
                               const Tolerances& tol = {});

  // Takes elements that are already HS-orthonormal; throws ValidationError otherwise.
  static SubspaceBasis from_orthonormal(Index n, std::vector<Matrix> elements,
                                        const Tolerances& tol = {});

  Index dim() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Matrix>& elements() const { return elements_; }
  const Matrix& operator[](std::size_t k) const { return elements_[k]; }

  // Orthogonal projector on vec(M_n) onto this subspace.
  Matrix projector_superop() const;

 private:
  SubspaceBasis(Index n, std::vector<Matrix> elements) : n_(n), elements_(std::move(elements)) {}

  Index n_ = 0;
  std::vector<Matrix> elements_;
};

// {x : x g = g x for every generator g}.
SubspaceBasis commutant(Index n, const std::vector<Matrix>& generators, const Tolerances& tol = {});

// Sum_b <b, x> b.
Matrix hs_project(const Matrix& x, const SubspaceBasis& basis);

// HS distance from x to the subspace.
double hs_residual(const Matrix& x, const SubspaceBasis& basis);

// Closed under adjoint and under products of basis pairs, each membership
// accepted when residual <= eq_rtol * (1 + ||candidate||_HS).
bool is_star_algebra(const SubspaceBasis& basis, const Tolerances& tol = {});

}  // namespace vnerg
