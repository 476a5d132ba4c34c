#include "vnerg/ergodic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "vnerg/error.hpp"

namespace vnerg {

namespace {

Matrix embed_superop(const StandardForm& sf) {
  return sandwich_superop(identity(sf.dim()), sf.state().sqrt());
}

Matrix unembed_superop(const StandardForm& sf) {
  return sandwich_superop(identity(sf.dim()), sf.state().inv_sqrt());
}

double max_column_norm(const Matrix& a) {
  double worst = 0.0;
  for (Index k = 0; k < a.cols(); ++k) worst = std::max(worst, a.col(k).norm());
  return worst;
}

void require_hypothesis(const ClassReport& r, std::string_view what) {
  if (!r.in_P_half) {
    throw Error(ErrorKind::NotInPHalf, std::string(what) + " is not in P^{1/2}_phi");
  }
}

}  // namespace

Matrix power_sum(const Matrix& a, long n) {
  require_square(a, "power_sum base");
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "power_sum needs n >= 0");
  const Index d = a.rows();
  Matrix sum = Matrix::Zero(d, d);
  Matrix power = Matrix::Identity(d, d);
  const auto un = static_cast<unsigned long>(n);
  for (int bit = std::bit_width(un) - 1; bit >= 0; --bit) {
    sum += power * sum;
    power = power * power;
    if ((un >> bit) & 1UL) {
      sum = Matrix::Identity(d, d) + a * sum;
      power = a * power;
    }
  }
  return sum;
}

Matrix cesaro_operator(const Matrix& t, long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Cesaro average needs n >= 1");
  return power_sum(t, n) / static_cast<double>(n);
}

QuantumMap cesaro_map(const QuantumMap& map, long n) {
  return QuantumMap::from_superop(cesaro_operator(map.superop(), n), map.picture());
}

Matrix mean_projection(const Matrix& t, const Tolerances& tol) {
  require_square(t, "mean_projection input");
  const double norm = op_norm(t);
  if (norm > 1.0 + tol.psd_floor) {
    throw Error(ErrorKind::NotContraction,
                "operator norm " + std::to_string(norm) + " exceeds 1 + psd_floor");
  }
  const Index d = t.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix p = projector(null_space(t - id, tol), d);
  const Matrix p_adj = projector(null_space(t.adjoint() - id, tol), d);
  if ((p - p_adj).norm() > tol.eq_rtol * std::max(1.0, p.norm())) {
    throw Error(ErrorKind::ValidationError, "fixed spaces of T and T^dagger disagree");
  }
  return p;
}

double bimodule_residual(const QuantumMap& expectation, const SubspaceBasis& fixed_algebra) {
  const Index n = expectation.dim();
  double worst = 0.0;
  for (const Matrix& y : fixed_algebra.elements()) {
    for (const Matrix& z : fixed_algebra.elements()) {
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
          const Matrix x = matrix_unit(n, i, j);
          worst = std::max(worst, (y * expectation(x) * z - expectation(y * x * z)).norm());
        }
      }
    }
  }
  return worst;
}

ErgodicDecomposition make_decomposition(Matrix projection, SubspaceBasis fixed_algebra,
                                        const StandardForm& sf) {
  const Index n = sf.dim();
  const Tolerances& tol = sf.tolerances();
  require_dim(projection, sf.gns_dim(), "mean projection");
  if (fixed_algebra.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, "fixed algebra lives in a different M_n");
  }
  QuantumMap e = QuantumMap::from_superop(unembed_superop(sf) * projection * embed_superop(sf));

  DecompositionAudit audit;
  audit.projection_residual =
      (projection * projection - projection).norm() + (projection - projection.adjoint()).norm();
  audit.idempotence_residual = (e.superop() * e.superop() - e.superop()).norm();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Matrix x = matrix_unit(n, i, j);
      const Matrix lhs = sf.gns_embed(e(x));
      const Matrix rhs = unvec(projection * vec(sf.gns_embed(x)), n);
      audit.embedding_residual = std::max(audit.embedding_residual, (lhs - rhs).norm());
    }
  }
  std::vector<Matrix> embedded;
  for (const Matrix& b : fixed_algebra.elements()) embedded.push_back(sf.gns_embed(b));
  const SubspaceBasis range = SubspaceBasis::span_of(n, embedded, tol);
  audit.range_residual = (range.projector_superop() - projection).norm();

  audit.unital_expectation = approx_equal(e(identity(n)), identity(n), tol);
  if (audit.unital_expectation) {
    audit.bimodule_residual = bimodule_residual(e, fixed_algebra);
    audit.star_algebra = is_star_algebra(fixed_algebra, tol);
  }

  const double scale = std::max(1.0, projection.norm());
  const double limit = tol.eq_rtol * scale;
  if (audit.projection_residual > limit || audit.idempotence_residual > limit ||
      audit.embedding_residual > limit || audit.range_residual > limit) {
    throw Error(ErrorKind::ValidationError,
                "ergodic decomposition audit failed (projection " +
                    std::to_string(audit.projection_residual) + ", idempotence " +
                    std::to_string(audit.idempotence_residual) + ", embedding " +
                    std::to_string(audit.embedding_residual) + ", range " +
                    std::to_string(audit.range_residual) + ")");
  }
  if (audit.unital_expectation &&
      (*audit.bimodule_residual > tol.eq_rtol * scale || !*audit.star_algebra)) {
    throw Error(ErrorKind::ValidationError, "unital expectation fails the bimodule audit");
  }

  ErgodicDecomposition out{std::move(projection), std::move(e), std::move(fixed_algebra), 0,
                           audit};
  out.fixed_dim = static_cast<Index>(out.fixed_algebra.size());
  return out;
}

ErgodicDecomposition conditional_expectation(const QuantumMap& map, const StandardForm& sf,
                                             const ErgodicOptions& options) {
  if (map.picture() != Picture::Algebra) {
    throw Error(ErrorKind::InvalidArgument, "conditional_expectation expects a map on M");
  }
  require_hypothesis(classify(map, sf, options.trials, options.seed), "map");
  const Index n = sf.dim();
  Matrix p = mean_projection(gns_operator(map, sf), sf.tolerances());
  const Matrix shifted = map.superop() - Matrix::Identity(n * n, n * n);
  std::vector<Matrix> fixed;
  for (const Vector& v : null_space(shifted, sf.tolerances())) fixed.push_back(unvec(v, n));
  return make_decomposition(std::move(p), SubspaceBasis::span_of(n, fixed, sf.tolerances()), sf);
}

double predual_distance(const QuantumMap& m1, const QuantumMap& m2, const Functional& psi) {
  if (m1.dim() != m2.dim() || psi.dim() != m1.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "predual_distance dims differ");
  }
  return trace_norm(m1.apply_predual(psi.sigma()) - m2.apply_predual(psi.sigma()));
}

std::vector<Functional> matrix_unit_battery(Index n) {
  std::vector<Functional> out;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out.emplace_back(matrix_unit(n, i, j));
  }
  return out;
}

std::vector<ProfilePoint> convergence_profile(const QuantumMap& map, const StandardForm& sf,
                                              const std::vector<Functional>& psi,
                                              const std::vector<long>& n_list,
                                              const ErgodicOptions& options) {
  const ErgodicDecomposition dec = conditional_expectation(map, sf, options);
  const Matrix t = gns_operator(map, sf);
  std::vector<ProfilePoint> out;
  for (long n : n_list) {
    const QuantumMap s = cesaro_map(map, n);
    const double gns = op_norm(cesaro_operator(t, n) - dec.projection);
    for (std::size_t k = 0; k < psi.size(); ++k) {
      out.push_back({static_cast<double>(n), k, predual_distance(s, dec.expectation, psi[k]), gns});
    }
  }
  return out;
}

DualityCertificate theorem11_certificate(const std::vector<QuantumMap>& maps,
                                         const StandardForm& sf,
                                         const std::vector<Functional>& psi_battery,
                                         const ErgodicOptions& options) {
  const Index n = sf.dim();
  std::vector<QuantumMap> duals;
  std::vector<Matrix> ops;
  std::vector<Matrix> dual_ops;
  for (const QuantumMap& m : maps) {
    if (m.picture() != Picture::Algebra) {
      throw Error(ErrorKind::InvalidArgument, "theorem11_certificate expects maps on M");
    }
    require_hypothesis(classify(m, sf, options.trials, options.seed), "sequence element");
    duals.push_back(dual_map(m, sf));
    ops.push_back(gns_operator(m, sf));
    dual_ops.push_back(gns_operator(duals.back(), sf));
  }
  // c1 c2* with c1 = I
  std::vector<Matrix> coordinates;
  for (const Functional& psi : psi_battery) {
    coordinates.emplace_back(
        (sf.state().inv_sqrt() * psi.sigma() * sf.state().inv_sqrt()).adjoint());
  }

  DualityCertificate cert;
  for (std::size_t a = 0; a < maps.size(); ++a) {
    for (std::size_t b = a + 1; b < maps.size(); ++b) {
      PairCertificate pc{a, b};
      pc.gns_distance = max_column_norm(ops[a] - ops[b]);
      pc.gns_dual_distance = max_column_norm(dual_ops[a] - dual_ops[b]);
      const QuantumMap diff = maps[a] - maps[b];
      const QuantumMap dual_diff = duals[a] - duals[b];
      for (std::size_t k = 0; k < psi_battery.size(); ++k) {
        const Functional& psi = psi_battery[k];
        const double dist = trace_norm(diff.apply_predual(psi.sigma()));
        const double bound = (sf.state().sqrt() * dual_diff(coordinates[k])).norm();
        if (k == 0 || dist > pc.predual_distance) {
          pc.predual_distance = dist;
          pc.eq8_bound = bound;
        }
        cert.max_violation = std::max(cert.max_violation, dist - bound);
        for (Index i = 0; i < n; ++i) {
          for (Index j = 0; j < n; ++j) {
            const Matrix x = matrix_unit(n, i, j);
            const double lhs = std::abs(psi(diff(x)));
            const double rhs = bound * sf.gns_embed(x).norm();
            cert.max_pointwise_violation = std::max(cert.max_pointwise_violation, lhs - rhs);
          }
        }
      }
      cert.pairs.push_back(pc);
    }
  }
  return cert;
}

ConverseSample converse_inequality(const QuantumMap& m1, const QuantumMap& m2,
                                   const StandardForm& sf, const Matrix& x) {
  require_dim(x, sf.dim(), "converse_inequality element");
  const Matrix& q = sf.state().quarter();
  const Matrix moved = m1(x) - m2(x);
  ConverseSample s;
  s.lhs = (q * moved * q).squaredNorm();
  const QuantumMap tilde_diff = tilde_map(m1, sf) - tilde_map(m2, sf);
  const Matrix sigma = sf.state().sqrt() * x * sf.state().sqrt();
  const double xnorm = op_norm(x);
  s.rhs = 2.0 * xnorm * xnorm * trace_norm(tilde_diff.apply_predual(sigma));
  return s;
}

}  // namespace vnerg

namespace vnerg {

Matrix kernel_density(const Matrix& schroedinger_generator, Index n) {
  require_dim(schroedinger_generator, n * n, "generator");
  const Matrix& k = schroedinger_generator;
  const Vector start = vec(Matrix(identity(n) / static_cast<double>(n)));
  // start = rho + K y with K rho = 0  =>  K^2 y = K start
  const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(k * k);
  const Vector y = cod.solve(k * start);
  Matrix rho = unvec(start - k * y, n);
  rho = (rho + rho.adjoint()) / 2.0;
  return rho / rho.trace().real();
}

Matrix invariant_density(const QuantumMap& map) {
  const Index n = map.dim();
  return kernel_density(map.predual().superop() - Matrix::Identity(n * n, n * n), n);
}

}  // namespace vnerg
