#pragma once

// Cesaro averages, mean ergodic projections and conditional expectations onto
// fixed-point algebras, plus predual (trace-norm) convergence measurements.

#include <cstdint>
#include <optional>
#include <vector>

#include "vnerg/algebra.hpp"
#include "vnerg/quantum_map.hpp"
#include "vnerg/standard_form.hpp"

namespace vnerg {

// Residuals of the structural identities an ErgodicDecomposition must satisfy.
struct DecompositionAudit {
  double projection_residual = 0.0;   // ||P^2 - P|| + ||P - P^dagger||
  double idempotence_residual = 0.0;  // ||E o E - E||
  double embedding_residual = 0.0;    // max_x ||E(x) zeta - P(x zeta)||
  double range_residual = 0.0;        // ||P - proj span{x zeta : x in N}||
  bool unital_expectation = false;    // E(I) = I
  std::optional<double> bimodule_residual;  // only when E(I) = I
  std::optional<bool> star_algebra;         // only when E(I) = I
};

struct ErgodicDecomposition {
  Matrix projection;  // P on the GNS space, n^2 x n^2
  QuantumMap expectation;
  SubspaceBasis fixed_algebra;
  Index fixed_dim = 0;
  DecompositionAudit audit;
};

struct ErgodicOptions {
  int trials = 32;
  std::uint64_t seed = 0;
};

// sum_{k<n} a^k by binary splitting, O(log n) products.
Matrix power_sum(const Matrix& a, long n);

// (1/n) sum_{k=0}^{n-1} tau^k.
QuantumMap cesaro_map(const QuantumMap& map, long n);
Matrix cesaro_operator(const Matrix& t, long n);

// Orthogonal projection onto {f : T f = f}; throws NotContraction when
// op_norm(T) > 1 + psd_floor.
Matrix mean_projection(const Matrix& t, const Tolerances& tol = {});

// Assembles E(x) = P(x rho^{1/2}) rho^{-1/2} and audits the decomposition;
// throws ValidationError when an audit residual exceeds tolerance.
ErgodicDecomposition make_decomposition(Matrix projection, SubspaceBasis fixed_algebra,
                                        const StandardForm& sf);

// max over y, z in the N basis and matrix units x of ||y E(x) z - E(y x z)||.
double bimodule_residual(const QuantumMap& expectation, const SubspaceBasis& fixed_algebra);

ErgodicDecomposition conditional_expectation(const QuantumMap& map, const StandardForm& sf,
                                             const ErgodicOptions& options = {});

// Norm in M_* of psi o m1 - psi o m2.
double predual_distance(const QuantumMap& m1, const QuantumMap& m2, const Functional& psi);

struct ProfilePoint {
  double parameter = 0.0;  // n, lambda or Folner index
  std::size_t psi_index = 0;
  double predual_distance = 0.0;
  double gns_distance = 0.0;  // operator-norm distance of the GNS operators
};

// Each matrix unit E_ij as a functional representer.
std::vector<Functional> matrix_unit_battery(Index n);

std::vector<ProfilePoint> convergence_profile(const QuantumMap& map, const StandardForm& sf,
                                              const std::vector<Functional>& psi,
                                              const std::vector<long>& n_list,
                                              const ErgodicOptions& options = {});

// Pairwise certificate for a sequence of maps and their phi-duals.
struct PairCertificate {
  std::size_t first = 0;
  std::size_t second = 0;
  double predual_distance = 0.0;    // max over psi
  double eq8_bound = 0.0;           // bound matching that psi
  double gns_distance = 0.0;        // max_f ||(T_a - T_b) f|| over an orthonormal basis
  double gns_dual_distance = 0.0;   // same for the dual operators
};

struct DualityCertificate {
  std::vector<PairCertificate> pairs;
  // max over pairs, psi of predual_distance - bound (clamped at 0).
  double max_violation = 0.0;
  // Pointwise form on matrix units: |psi(tau_a(x) - tau_b(x))| <= bound * ||x zeta||.
  double max_pointwise_violation = 0.0;
};

// Every psi = trace(sigma .) is written as the vector functional of c1 = I and
// c2 = rho^{-1/2} sigma rho^{-1/2}; the bound is ||(tau'_a - tau'_b)(c1 c2*) zeta||.
DualityCertificate theorem11_certificate(const std::vector<QuantumMap>& maps,
                                         const StandardForm& sf,
                                         const std::vector<Functional>& psi_battery,
                                         const ErgodicOptions& options = {});

struct ConverseSample {
  double lhs = 0.0;  // ||Delta^{1/4} (tau1 - tau2)(x) zeta||^2
  double rhs = 0.0;  // 2 ||x||^2 ||psi_x o (tau1~ - tau2~)||
};

// psi_x(y) = <J x J zeta, y zeta>, representer rho^{1/2} x rho^{1/2}.
ConverseSample converse_inequality(const QuantumMap& m1, const QuantumMap& m2,
                                   const StandardForm& sf, const Matrix& x);

}  // namespace vnerg

namespace vnerg {

// Projects I/n onto ker(K) along ran(K), where K is the Schroedinger-picture
// generator (S_* - I for a map, L_* for a semigroup) whose zero eigenvalue is
// semisimple.  Returns the resulting density matrix.
Matrix kernel_density(const Matrix& schroedinger_generator, Index n);

// Invariant density of a trace-preserving map's predual, started from I/n.
Matrix invariant_density(const QuantumMap& map);

}  // namespace vnerg
