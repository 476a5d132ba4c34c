#include "vnerg/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vnerg/error.hpp"

namespace vnerg {

namespace {

// Rotate each column so its first entry of non-negligible magnitude is real positive.
void fix_phases(Matrix& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    const double norm = vectors.col(c).norm();
    if (norm == 0.0) continue;
    for (Index r = 0; r < vectors.rows(); ++r) {
      const Complex z = vectors(r, c);
      if (std::abs(z) > 1e-10 * norm) {
        vectors.col(c) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
}

Matrix symmetrized(const Matrix& a) { return (a + a.adjoint()) / 2.0; }

}  // namespace

void Tolerances::validate() const {
  if (!(psd_floor > 0.0) || !(eq_rtol > 0.0) || !(nullspace_rel > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be strictly positive");
  }
  if (!(psd_floor < 1e-3)) {
    throw Error(ErrorKind::InvalidArgument, "psd_floor must be below 1e-3");
  }
}

void require_finite(const Matrix& a, std::string_view what) {
  if (!a.allFinite()) {
    throw Error(ErrorKind::NonFinite, std::string(what) + " has NaN or Inf entries");
  }
}

void require_square(const Matrix& a, std::string_view what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " must be a nonempty square matrix, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_dim(const Matrix& a, Index n, std::string_view what) {
  if (a.rows() != n || a.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n) +
                    ", got " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

Matrix matrix_unit(Index n, Index i, Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

Matrix unvec(const Vector& v, Index n) {
  if (v.size() != n * n) {
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match n^2");
  }
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix sandwich_superop(const Matrix& a, const Matrix& b) { return kron(b.transpose(), a); }

Complex hs_inner(const Matrix& a, const Matrix& b) {
  return (a.array().conjugate() * b.array()).sum();
}

double hs_norm(const Matrix& a) { return a.norm(); }

bool approx_equal(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() <= tol.eq_rtol * scale;
}

double min_hermitian_eigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool psd_check(const Matrix& a, const Tolerances& tol) {
  require_square(a, "psd_check input");
  require_finite(a, "psd_check input");
  const double norm = op_norm(a);
  if ((a - a.adjoint()).norm() > tol.eq_rtol * std::max(1.0, norm)) return false;
  return min_hermitian_eigenvalue(a) >= -tol.psd_floor * std::max(1.0, norm);
}

Svd svd(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

double trace_norm(const Matrix& a) {
  require_finite(a, "trace_norm input");
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(a).singularValues().sum();
}

double op_norm(const Matrix& a) {
  require_finite(a, "op_norm input");
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

HermitianEigen hermitian_eigen(const Matrix& a, const Tolerances& tol) {
  require_square(a, "hermitian_eigen input");
  require_finite(a, "hermitian_eigen input");
  if ((a - a.adjoint()).norm() > tol.eq_rtol * std::max(1.0, a.norm())) {
    throw Error(ErrorKind::NotPSD, "matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(a));
  const Index n = a.rows();
  HermitianEigen out{RealVector(n), Matrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    out.values(k) = es.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  fix_phases(out.vectors);
  return out;
}

Matrix frac_power(const Matrix& a, Complex s, const Tolerances& tol) {
  if (!psd_check(a, tol)) throw Error(ErrorKind::NotPSD, "frac_power requires a PSD matrix");
  const HermitianEigen eig = hermitian_eigen(a, tol);
  const Index n = a.rows();
  const bool needs_definite = s.real() < 0.0 || (s.real() == 0.0 && s.imag() != 0.0);
  const double floor = tol.psd_floor * std::max(1.0, eig.values(0));
  if (needs_definite && eig.values(n - 1) <= floor) {
    throw Error(ErrorKind::SingularMatrix,
                "negative or imaginary power of a matrix with eigenvalue at or below psd_floor");
  }
  Vector f(n);
  for (Index k = 0; k < n; ++k) {
    const double d = std::max(eig.values(k), 0.0);
    if (s == Complex(0.0, 0.0)) {
      f(k) = 1.0;
    } else if (d == 0.0) {
      f(k) = 0.0;
    } else {
      f(k) = std::exp(s * std::log(d));
    }
  }
  return eig.vectors * f.asDiagonal() * eig.vectors.adjoint();
}

std::vector<Vector> null_space(const Matrix& a, const Tolerances& tol) {
  require_finite(a, "null_space input");
  const Index cols = a.cols();
  std::vector<Vector> basis;
  if (cols == 0) return basis;
  const Svd d = svd(a);
  const Index ranked = d.singular_values.size();
  const double sigma_max = ranked > 0 ? d.singular_values(0) : 0.0;
  const double cut = tol.nullspace_rel * sigma_max;
  Matrix kernel(cols, 0);
  for (Index k = 0; k < cols; ++k) {
    const bool is_null = k >= ranked || sigma_max == 0.0 || d.singular_values(k) <= cut;
    if (is_null) {
      kernel.conservativeResize(Eigen::NoChange, kernel.cols() + 1);
      kernel.col(kernel.cols() - 1) = d.v.col(k);
    }
  }
  fix_phases(kernel);
  for (Index k = 0; k < kernel.cols(); ++k) basis.emplace_back(kernel.col(k));
  return basis;
}

Matrix projector(const std::vector<Vector>& basis, Index dim) {
  Matrix p = Matrix::Zero(dim, dim);
  for (const auto& v : basis) p += v * v.adjoint();
  return p;
}

Matrix matrix_exp(const Matrix& a) {
  require_square(a, "matrix_exp input");
  require_finite(a, "matrix_exp input");
  Matrix out = a.exp();
  require_finite(out, "matrix_exp result");
  return out;
}

}  // namespace vnerg
