#pragma once

// Dense complex matrix kernel shared by every other module.
//
// Superoperators act on column-major vectorizations, so that
// vec(A X B) = (B^T (x) A) vec(X).  Matrix units E_ij (HS-orthonormal) map to
// the standard basis vector with index i + j*n.

#include <Eigen/Dense>

#include <complex>
#include <string_view>
#include <vector>

namespace vnerg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct Tolerances {
  double psd_floor = 1e-9;
  double eq_rtol = 1e-8;
  double nullspace_rel = 1e-10;

  // Throws InvalidArgument unless all are strictly positive and psd_floor < 1e-3.
  void validate() const;
};

void require_finite(const Matrix& a, std::string_view what);
void require_square(const Matrix& a, std::string_view what);
void require_dim(const Matrix& a, Index n, std::string_view what);

Matrix identity(Index n);
// E_ij: 1 at (i, j), 0 elsewhere.
Matrix matrix_unit(Index n, Index i, Index j);

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Index n);
Matrix kron(const Matrix& a, const Matrix& b);

// Superoperator of x -> a x b.
Matrix sandwich_superop(const Matrix& a, const Matrix& b);

// Hilbert-Schmidt inner product trace(a* b), antilinear in the first slot.
Complex hs_inner(const Matrix& a, const Matrix& b);
double hs_norm(const Matrix& a);

// ||a - b|| <= eq_rtol * max(1, ||a||, ||b||) in the HS norm.
bool approx_equal(const Matrix& a, const Matrix& b, const Tolerances& tol = {});

bool psd_check(const Matrix& a, const Tolerances& tol = {});
double min_hermitian_eigenvalue(const Matrix& a);

double trace_norm(const Matrix& a);
double op_norm(const Matrix& a);

// Descending eigenvalues; each eigenvector's first nonzero entry is real positive.
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};
HermitianEigen hermitian_eigen(const Matrix& a, const Tolerances& tol = {});

// Singular values in descending order with matching singular vectors.
struct Svd {
  RealVector singular_values;
  Matrix u;
  Matrix v;
};
Svd svd(const Matrix& a);

// U f(D) U* with f(d) = d^s for PSD a.  Complex s covers unitary powers a^{it}.
Matrix frac_power(const Matrix& a, Complex s, const Tolerances& tol = {});
inline Matrix frac_power(const Matrix& a, double s, const Tolerances& tol = {}) {
  return frac_power(a, Complex(s, 0.0), tol);
}

// Orthonormal basis of right-singular vectors with singular value
// <= nullspace_rel * sigma_max.  Accepts rectangular input (stacked systems).
std::vector<Vector> null_space(const Matrix& a, const Tolerances& tol = {});

// Orthogonal projector onto the span of the given orthonormal vectors.
Matrix projector(const std::vector<Vector>& basis, Index dim);

Matrix matrix_exp(const Matrix& a);

}  // namespace vnerg
