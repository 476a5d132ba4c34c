#include "vnerg/quantum_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vnerg/error.hpp"
#include "vnerg/random.hpp"

namespace vnerg {

namespace {

Index dim_from_superop(const Matrix& s) {
  require_square(s, "superoperator");
  const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(s.rows()))));
  if (n * n != s.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "superoperator size is not a perfect square");
  }
  return n;
}

void require_same_dim(const QuantumMap& a, const QuantumMap& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "maps act on different M_n");
}

Picture opposite(Picture p) {
  return p == Picture::Algebra ? Picture::Commutant : Picture::Algebra;
}

// GNS embedding of the given picture: x rho^{1/2} (algebra) or rho^{1/2} c (commutant).
Matrix embed(const StandardForm& sf, Picture p, const Matrix& x) {
  return p == Picture::Algebra ? Matrix(x * sf.state().sqrt()) : Matrix(sf.state().sqrt() * x);
}

Matrix embed_superop(const StandardForm& sf, Picture p, bool inverse) {
  const Index n = sf.dim();
  const Matrix& r = inverse ? sf.state().inv_sqrt() : sf.state().sqrt();
  return p == Picture::Algebra ? sandwich_superop(identity(n), r) : sandwich_superop(r, identity(n));
}

}  // namespace

Matrix transpose_superop(Index n) {
  Matrix k = Matrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) k(j + i * n, i + j * n) = 1.0;
  }
  return k;
}

QuantumMap QuantumMap::from_superop(Matrix superop, Picture picture) {
  const Index n = dim_from_superop(superop);
  require_finite(superop, "superoperator");
  return QuantumMap(n, std::move(superop), picture);
}

QuantumMap QuantumMap::from_kraus(std::vector<Matrix> kraus, const Tolerances& tol) {
  if (kraus.empty()) throw Error(ErrorKind::InvalidArgument, "empty Kraus family");
  const Index n = kraus.front().rows();
  Matrix s = Matrix::Zero(n * n, n * n);
  for (const Matrix& k : kraus) {
    require_dim(k, n, "Kraus operator");
    require_finite(k, "Kraus operator");
    s += sandwich_superop(k.adjoint(), k);
  }
  QuantumMap m(n, std::move(s), Picture::Algebra);
  m.kraus_ = std::move(kraus);
  if (kraus_consistency_residual(m) > tol.eq_rtol) {
    throw Error(ErrorKind::ValidationError, "Kraus family disagrees with its superoperator");
  }
  return m;
}

QuantumMap QuantumMap::from_function(Index n, const std::function<Matrix(const Matrix&)>& f,
                                     Picture picture) {
  Matrix s(n * n, n * n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const Matrix out = f(matrix_unit(n, i, j));
      require_dim(out, n, "map output");
      s.col(i + j * n) = vec(out);
    }
  }
  return from_superop(std::move(s), picture);
}

QuantumMap QuantumMap::identity_map(Index n) {
  return QuantumMap(n, Matrix::Identity(n * n, n * n), Picture::Algebra);
}

QuantumMap QuantumMap::unitary_conjugation(const Matrix& u) {
  require_square(u, "unitary");
  return from_kraus({u.adjoint()});
}

QuantumMap QuantumMap::mixed_unitary(const std::vector<Matrix>& unitaries,
                                     const std::vector<double>& weights) {
  if (unitaries.empty() || unitaries.size() != weights.size()) {
    throw Error(ErrorKind::InvalidArgument, "mixed_unitary needs matching nonempty lists");
  }
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    if (weights[i] < 0.0) throw Error(ErrorKind::InvalidArgument, "negative mixing weight");
    kraus.push_back(std::sqrt(weights[i]) * unitaries[i].adjoint());
  }
  return from_kraus(std::move(kraus));
}

QuantumMap QuantumMap::transpose_map(Index n) {
  return QuantumMap(n, transpose_superop(n), Picture::Algebra);
}

QuantumMap QuantumMap::replacement(const Matrix& sigma) {
  require_square(sigma, "replacement functional");
  const Index n = sigma.rows();
  // vec(I) * vec(sigma^T)^T : vec(x) -> trace(sigma x) vec(I)
  Matrix s = vec(identity(n)) * vec(Matrix(sigma.transpose())).transpose();
  return QuantumMap(n, std::move(s), Picture::Algebra);
}

QuantumMap QuantumMap::with_report(ClassReport report) const {
  QuantumMap m = *this;
  m.report_ = report;
  return m;
}

QuantumMap QuantumMap::with_unverified_flag(bool flag) const {
  QuantumMap m = *this;
  m.hypothesis_unverified_ = flag;
  return m;
}

Matrix QuantumMap::operator()(const Matrix& x) const {
  require_dim(x, n_, "map argument");
  return unvec(superop_ * vec(x), n_);
}

Matrix QuantumMap::apply_predual(const Matrix& sigma) const {
  require_dim(sigma, n_, "predual argument");
  // (S^dagger (sigma*))*
  return unvec(superop_.adjoint() * vec(Matrix(sigma.adjoint())), n_).adjoint();
}

QuantumMap QuantumMap::predual() const {
  const Matrix k = transpose_superop(n_);
  return QuantumMap(n_, k * superop_.transpose() * k, picture_);
}

QuantumMap QuantumMap::compose(const QuantumMap& other) const {
  require_same_dim(*this, other);
  return QuantumMap(n_, superop_ * other.superop_, picture_);
}

QuantumMap QuantumMap::operator+(const QuantumMap& other) const {
  require_same_dim(*this, other);
  return QuantumMap(n_, superop_ + other.superop_, picture_);
}

QuantumMap QuantumMap::operator-(const QuantumMap& other) const {
  require_same_dim(*this, other);
  return QuantumMap(n_, superop_ - other.superop_, picture_);
}

QuantumMap QuantumMap::scaled(Complex s) const { return QuantumMap(n_, s * superop_, picture_); }

QuantumMap QuantumMap::star_conjugated() const {
  const Matrix k = transpose_superop(n_);
  return QuantumMap(n_, k * superop_.conjugate() * k, picture_);
}

Matrix choi(const QuantumMap& map) {
  const Index n = map.dim();
  Matrix c = Matrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      c += kron(matrix_unit(n, i, j), map(matrix_unit(n, i, j)));
    }
  }
  return c;
}

double kraus_consistency_residual(const QuantumMap& map) {
  if (!map.kraus()) return 0.0;
  const Index n = map.dim();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Matrix e = matrix_unit(n, i, j);
      Matrix direct = Matrix::Zero(n, n);
      for (const Matrix& k : *map.kraus()) direct += k.adjoint() * e * k;
      worst = std::max(worst, (direct - map(e)).norm());
    }
  }
  return worst;
}

Matrix gns_operator(const QuantumMap& map, const StandardForm& sf) {
  if (map.dim() != sf.dim()) throw Error(ErrorKind::DimensionMismatch, "map and state dims differ");
  const Picture p = map.picture();
  return embed_superop(sf, p, false) * map.superop() * embed_superop(sf, p, true);
}

QuantumMap dual_map(const QuantumMap& map, const StandardForm& sf) {
  const Matrix t = gns_operator(map, sf);
  const Picture target = opposite(map.picture());
  Matrix d = embed_superop(sf, target, true) * t.adjoint() * embed_superop(sf, target, false);
  bool unverified = true;
  if (map.report()) {
    unverified = !map.report()->in_P_half;
  } else {
    unverified = !psd_check(choi(map), sf.tolerances());
  }
  return QuantumMap::from_superop(std::move(d), target).with_unverified_flag(unverified);
}

double adjoint_residual(const QuantumMap& map, const QuantumMap& dual, const StandardForm& sf) {
  if (map.dim() != sf.dim() || dual.dim() != sf.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "map, dual and state dims differ");
  }
  const Index n = sf.dim();
  const Picture pm = map.picture();
  const Picture pd = dual.picture();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Matrix x = matrix_unit(n, i, j);
      const Matrix tx = embed(sf, pm, map(x));
      const Matrix xz = embed(sf, pm, x);
      for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < n; ++l) {
          const Matrix c = matrix_unit(n, k, l);
          const Complex lhs = hs_inner(embed(sf, pd, c), tx);
          const Complex rhs = hs_inner(embed(sf, pd, dual(c)), xz);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
  }
  return worst;
}

QuantumMap tilde_map(const QuantumMap& map, const StandardForm& sf) {
  const QuantumMap d = dual_map(map, sf);
  return QuantumMap::from_superop(d.star_conjugated().superop(), map.picture())
      .with_unverified_flag(d.hypothesis_unverified());
}

double ks_residual(const QuantumMap& map, const Matrix& x) {
  require_dim(x, map.dim(), "ks_residual argument");
  const Matrix xs = x.adjoint();
  Matrix gap;
  if (map.picture() == Picture::Algebra) {
    gap = map(xs * x) - map(xs) * map(x);
  } else {
    gap = map(x * xs) - map(x) * map(xs);
  }
  return -min_hermitian_eigenvalue(gap);
}

double modular_commutation_residual(const QuantumMap& map, const StandardForm& sf,
                                    const std::vector<double>& t_list) {
  const Index n = sf.dim();
  double worst = 0.0;
  for (double t : t_list) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const Matrix x = matrix_unit(n, i, j);
        const Matrix lhs = sf.modular_group(map(x), t);
        const Matrix rhs = map(sf.modular_group(x, t));
        worst = std::max(worst, (lhs - rhs).norm());
      }
    }
  }
  return worst;
}

ClassReport classify(const QuantumMap& map, const StandardForm& sf, int trials,
                     std::uint64_t seed) {
  if (map.dim() != sf.dim()) throw Error(ErrorKind::DimensionMismatch, "map and state dims differ");
  if (trials < 0) throw Error(ErrorKind::InvalidArgument, "trials must be non-negative");
  const Tolerances& tol = sf.tolerances();
  const Index n = sf.dim();
  const Matrix& rho = sf.state().rho();
  ClassReport r;
  r.trials = trials;

  const Matrix unit_image = map(identity(n));
  const Matrix unit_defect = identity(n) - unit_image;
  r.unital = approx_equal(unit_image, identity(n), tol);
  r.subunital = psd_check(unit_defect, tol);
  r.unit_defect_min_eigenvalue = min_hermitian_eigenvalue(unit_defect);

  const Matrix moved = map.apply_predual(rho);
  r.invariant = approx_equal(moved, rho, tol);
  r.subinvariant = psd_check(Matrix(rho - moved), tol);
  r.state_defect_min_eigenvalue = min_hermitian_eigenvalue(rho - moved);

  r.gns_norm = op_norm(gns_operator(map, sf));
  r.l2_contraction = r.gns_norm <= 1.0 + tol.psd_floor;

  const Matrix c = choi(map);
  r.cp = psd_check(c, tol);
  r.choi_min_eigenvalue = min_hermitian_eigenvalue(c);

  Rng rng(seed);
  std::uniform_int_distribution<Index> rank_dist(1, n);
  for (int k = 0; k < trials; ++k) {
    const Matrix p = random_psd(n, rank_dist(rng), rng);
    if (psd_check(map(p), tol)) ++r.positivity_samples_passed;
  }
  for (int k = 0; k < trials; ++k) {
    const double res = ks_residual(map, random_contraction_element(n, rng));
    r.ks_max_residual = std::max(r.ks_max_residual, res);
    if (res <= tol.psd_floor) ++r.ks_samples_passed;
  }
  r.in_P_half = r.subunital && r.subinvariant && r.l2_contraction && r.positivity_evidence();
  return r;
}

}  // namespace vnerg
