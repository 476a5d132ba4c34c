#pragma once

// Linear maps on M_n held as n^2 x n^2 superoperators on column-major vec(M_n).
//
// Kraus families use the Heisenberg convention x -> sum_j K_j* x K_j.
// A map lives either on M itself (Picture::Algebra) or on the commutant M',
// written in right-multiplier coordinates c (Picture::Commutant); the latter
// is where phi-dual maps live.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "vnerg/linalg.hpp"
#include "vnerg/standard_form.hpp"

namespace vnerg {

enum class Picture { Algebra, Commutant };

struct ClassReport {
  bool cp = false;
  bool unital = false;
  bool subunital = false;
  bool invariant = false;
  bool subinvariant = false;
  bool l2_contraction = false;
  bool in_P_half = false;
  int trials = 0;
  int positivity_samples_passed = 0;
  int ks_samples_passed = 0;

  // Raw evidence behind the flags.
  double choi_min_eigenvalue = 0.0;
  double unit_defect_min_eigenvalue = 0.0;   // min eig of I - tau(I)
  double state_defect_min_eigenvalue = 0.0;  // min eig of rho - tau_*(rho)
  double gns_norm = 0.0;                     // op_norm(T)
  double ks_max_residual = 0.0;

  bool positivity_evidence() const { return cp || positivity_samples_passed == trials; }
};

class QuantumMap {
 public:
  static QuantumMap from_superop(Matrix superop, Picture picture = Picture::Algebra);
  static QuantumMap from_kraus(std::vector<Matrix> kraus, const Tolerances& tol = {});
  // Tabulates a linear function on the matrix units.
  static QuantumMap from_function(Index n, const std::function<Matrix(const Matrix&)>& f,
                                  Picture picture = Picture::Algebra);

  static QuantumMap identity_map(Index n);
  // x -> u x u*.
  static QuantumMap unitary_conjugation(const Matrix& u);
  // x -> sum_i p_i u_i x u_i*.
  static QuantumMap mixed_unitary(const std::vector<Matrix>& unitaries,
                                  const std::vector<double>& weights);
  static QuantumMap transpose_map(Index n);
  // x -> trace(sigma x) I.
  static QuantumMap replacement(const Matrix& sigma);

  Index dim() const { return n_; }
  const Matrix& superop() const { return superop_; }
  const std::optional<std::vector<Matrix>>& kraus() const { return kraus_; }
  Picture picture() const { return picture_; }

  // Set on a dual computed from a map without positivity evidence.
  bool hypothesis_unverified() const { return hypothesis_unverified_; }
  const std::optional<ClassReport>& report() const { return report_; }
  QuantumMap with_report(ClassReport report) const;
  QuantumMap with_unverified_flag(bool flag) const;

  Matrix operator()(const Matrix& x) const;

  // Trace adjoint: trace(sigma tau(x)) = trace(tau_*(sigma) x).
  Matrix apply_predual(const Matrix& sigma) const;
  QuantumMap predual() const;

  // (this o other)(x) = this(other(x)).
  QuantumMap compose(const QuantumMap& other) const;
  QuantumMap operator+(const QuantumMap& other) const;
  QuantumMap operator-(const QuantumMap& other) const;
  QuantumMap scaled(Complex s) const;

  // x -> (tau(x*))*; superoperator K conj(S) K.
  QuantumMap star_conjugated() const;

 private:
  QuantumMap(Index n, Matrix superop, Picture picture)
      : n_(n), superop_(std::move(superop)), picture_(picture) {}

  Index n_ = 0;
  Matrix superop_;
  std::optional<std::vector<Matrix>> kraus_;
  Picture picture_ = Picture::Algebra;
  bool hypothesis_unverified_ = false;
  std::optional<ClassReport> report_;
};

// Permutation superoperator vec(x) -> vec(x^T).
Matrix transpose_superop(Index n);

// Sum_ij E_ij (x) tau(E_ij); tau is CP iff this is PSD.
Matrix choi(const QuantumMap& map);

// Kraus action versus superoperator on all matrix units.
double kraus_consistency_residual(const QuantumMap& map);

// Matrix of the GNS contraction: in the algebra picture a -> tau(a rho^{-1/2}) rho^{1/2};
// in the commutant picture a -> rho^{1/2} tau(rho^{-1/2} a).
Matrix gns_operator(const QuantumMap& map, const StandardForm& sf);

// phi-dual: the map whose GNS operator is the HS adjoint of gns_operator(map).
// The result lives in the opposite picture.
QuantumMap dual_map(const QuantumMap& map, const StandardForm& sf);

// Max over matrix units x (algebra side) and c (commutant side) of the defect in
// <c zeta, tau(x) zeta> = <tau'(c) zeta, x zeta>.
double adjoint_residual(const QuantumMap& map, const QuantumMap& dual, const StandardForm& sf);

// tau~(x) = J tau'(J x J) J = (rho^{-1/2} T^dagger(rho^{1/2} x*))*.
QuantumMap tilde_map(const QuantumMap& map, const StandardForm& sf);

// -(min eigenvalue of tau(x*x) - tau(x*)tau(x)); products reversed in the commutant picture.
double ks_residual(const QuantumMap& map, const Matrix& x);

// max over t and matrix units x of ||sigma_t(tau(x)) - tau(sigma_t(x))||_HS.
double modular_commutation_residual(const QuantumMap& map, const StandardForm& sf,
                                    const std::vector<double>& t_list);

ClassReport classify(const QuantumMap& map, const StandardForm& sf, int trials,
                     std::uint64_t seed);

}  // namespace vnerg
