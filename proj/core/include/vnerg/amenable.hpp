#pragma once

// Countable discrete groups with counting measure, Folner sets, Shulman
// temperedness audits, and unitary actions alpha_g = Ad(u_g) on M_n.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "vnerg/ergodic.hpp"
#include "vnerg/linalg.hpp"
#include "vnerg/quantum_map.hpp"
#include "vnerg/standard_form.hpp"

namespace vnerg {

// Canonical coordinates; unused slots stay zero.
//   Z^d:        (a_1, ..., a_d)
//   Heisenberg: (a, b, c) for x^a y^b z^c
//   cyclic:     (a mod N)
//   table:      (element index)
struct GroupElement {
  std::array<std::int64_t, 4> c{};

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const GroupElement& g) {
    return H::combine(std::move(h), g.c[0], g.c[1], g.c[2], g.c[3]);
  }
};

inline constexpr std::size_t kDefaultMaxSetSize = 50'000'000;

class DiscreteGroup {
 public:
  enum class Kind { IntegerLattice, Heisenberg, Cyclic, Table };

  // Z^d for 1 <= d <= 4.
  static DiscreteGroup integer_lattice(int d);
  // Discrete Heisenberg group <x, y, z | xy = yxz, z central>.
  static DiscreteGroup heisenberg();
  static DiscreteGroup cyclic(std::int64_t order);
  // table[a][b] = index of a*b.  The table is audited for closure, identity,
  // inverses and associativity; throws ValidationError on failure.
  static DiscreteGroup from_table(std::vector<std::vector<int>> table, std::vector<int> generators);

  Kind kind() const { return kind_; }
  std::string name() const;
  int rank() const { return rank_; }
  std::int64_t order() const { return order_; }  // 0 for infinite groups

  GroupElement identity() const;
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;
  const std::vector<GroupElement>& generators() const { return generators_; }

  // Associativity, identity and inverse laws on all words in generators and
  // their inverses up to the given length.
  bool audit_words(int max_length) const;

 private:
  DiscreteGroup() = default;

  Kind kind_ = Kind::IntegerLattice;
  int rank_ = 1;
  std::int64_t order_ = 0;
  int table_identity_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> table_inverse_;
  std::vector<GroupElement> generators_;
};

// Finite set of group elements in canonical sorted order.
class FolnerSet {
 public:
  FolnerSet() = default;
  explicit FolnerSet(std::vector<GroupElement> elements);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  bool contains(const GroupElement& g) const;

 private:
  std::vector<GroupElement> elements_;
};

struct FolnerSequence {
  std::string name;
  std::function<FolnerSet(long)> generate;

  FolnerSet operator()(long n) const { return generate(n); }
};

// Z^d: [-n, n]^d; Heisenberg: |a|, |b| <= n, |c| <= n^2; cyclic: the whole group.
FolnerSet folner_boxes(const DiscreteGroup& group, long n);
FolnerSequence box_sequence(const DiscreteGroup& group);
// Z only: F_n = [0, n).
FolnerSequence interval_sequence(const DiscreteGroup& group);

struct DefectCount {
  std::size_t symmetric_difference = 0;
  std::size_t set_size = 0;
  double value() const {
    return static_cast<double>(symmetric_difference) / static_cast<double>(set_size);
  }
};

// |F delta KF| / |F| with KF = {k f}.
DefectCount folner_defect(const DiscreteGroup& group, const FolnerSet& f,
                          const std::vector<GroupElement>& k);

// Incremental Shulman audit: feed F_1, F_2, ... in order; each call returns
// |U_n^{-1} F_n| / |F_n| with U_n the union of the earlier sets (0 for n = 1).
class TemperedAudit {
 public:
  explicit TemperedAudit(const DiscreteGroup& group, std::size_t max_set_size = kDefaultMaxSetSize);
  ~TemperedAudit();
  TemperedAudit(const TemperedAudit&) = delete;
  TemperedAudit& operator=(const TemperedAudit&) = delete;

  double push(const FolnerSet& f);

 private:
  struct Impl;
  DiscreteGroup group_;
  std::size_t max_set_size_;
  std::unique_ptr<Impl> impl_;
};

// max over 2 <= n <= big_n of |U_n^{-1} F_n| / |F_n|.
double tempered_constant(const DiscreteGroup& group, const FolnerSequence& seq, long big_n,
                         std::size_t max_set_size = kDefaultMaxSetSize);

class UnitaryAction {
 public:
  const DiscreteGroup& group() const { return group_; }
  Index dim() const { return n_; }
  const std::vector<Matrix>& generator_unitaries() const { return generator_unitaries_; }

  // u_g from the canonical word of g.
  Matrix unitary(const GroupElement& g) const;

 private:
  friend UnitaryAction build_action(const DiscreteGroup&, std::vector<Matrix>, const State&);
  UnitaryAction(DiscreteGroup group, Index n, std::vector<Matrix> unitaries)
      : group_(std::move(group)), n_(n), generator_unitaries_(std::move(unitaries)) {}

  DiscreteGroup group_;
  Index n_ = 0;
  std::vector<Matrix> generator_unitaries_;
  std::vector<Matrix> table_unitaries_;  // table groups only, indexed by element
};

// Validates unitarity, the defining relations (GroupRelationViolated) and
// [u_s, rho] = 0 for every generator (NotInvariant).
UnitaryAction build_action(const DiscreteGroup& group, std::vector<Matrix> generator_unitaries,
                           const State& state);

// (1/|F|) sum_{g in F} u_g x u_g*, summed pairwise in canonical order.
Matrix group_average(const UnitaryAction& action, const FolnerSet& f, const Matrix& x);
QuantumMap group_average_map(const UnitaryAction& action, const FolnerSet& f);

// N = commutant of the generator unitaries; P = projection onto the joint
// fixed space of the GNS unitaries.
ErgodicDecomposition invariant_expectation(const UnitaryAction& action, const StandardForm& sf);

std::vector<ProfilePoint> theorem32_profile(const UnitaryAction& action, const FolnerSequence& seq,
                                            const StandardForm& sf,
                                            const std::vector<Functional>& psi,
                                            const std::vector<long>& n_list,
                                            std::size_t max_set_size = kDefaultMaxSetSize);

}  // namespace vnerg
