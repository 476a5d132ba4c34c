#include "vnerg/amenable.hpp"

#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>

#include "vnerg/algebra.hpp"
#include "vnerg/error.hpp"

namespace vnerg {

namespace {

using ElementSet = absl::flat_hash_set<GroupElement>;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

GroupElement element(std::int64_t a, std::int64_t b = 0, std::int64_t c = 0, std::int64_t d = 0) {
  return GroupElement{{a, b, c, d}};
}

// u^k for a unitary u, negative k via the adjoint.
Matrix unitary_power(const Matrix& u, std::int64_t k) {
  Matrix base = k < 0 ? Matrix(u.adjoint()) : u;
  auto e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  Matrix out = identity(u.rows());
  while (e > 0) {
    if (e & 1U) out = out * base;
    base = base * base;
    e >>= 1U;
  }
  return out;
}

bool near(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  return (a - b).norm() <= tol.eq_rtol * std::max(1.0, a.norm());
}

// Deterministic pairwise reduction over [lo, hi).
Matrix tree_sum(const std::function<Matrix(std::size_t)>& term, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return term(lo);
  const std::size_t mid = lo + (hi - lo) / 2;
  return tree_sum(term, lo, mid) + tree_sum(term, mid, hi);
}

}  // namespace

DiscreteGroup DiscreteGroup::integer_lattice(int d) {
  if (d < 1 || d > 4) throw Error(ErrorKind::UnsupportedGroup, "Z^d supported for 1 <= d <= 4");
  DiscreteGroup g;
  g.kind_ = Kind::IntegerLattice;
  g.rank_ = d;
  for (int i = 0; i < d; ++i) {
    GroupElement e;
    e.c[static_cast<std::size_t>(i)] = 1;
    g.generators_.push_back(e);
  }
  return g;
}

DiscreteGroup DiscreteGroup::heisenberg() {
  DiscreteGroup g;
  g.kind_ = Kind::Heisenberg;
  g.rank_ = 3;
  g.generators_ = {element(1), element(0, 1), element(0, 0, 1)};
  return g;
}

DiscreteGroup DiscreteGroup::cyclic(std::int64_t order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "cyclic group order must be >= 1");
  DiscreteGroup g;
  g.kind_ = Kind::Cyclic;
  g.order_ = order;
  g.generators_ = {element(order == 1 ? 0 : 1)};
  return g;
}

DiscreteGroup DiscreteGroup::from_table(std::vector<std::vector<int>> table,
                                        std::vector<int> generators) {
  const int size = static_cast<int>(table.size());
  if (size == 0) throw Error(ErrorKind::ValidationError, "empty group table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != size) {
      throw Error(ErrorKind::ValidationError, "group table is not square");
    }
    for (int v : row) {
      if (v < 0 || v >= size) throw Error(ErrorKind::ValidationError, "table entry out of range");
    }
  }
  int ident = -1;
  for (int e = 0; e < size && ident < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < size && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) ident = e;
  }
  if (ident < 0) throw Error(ErrorKind::ValidationError, "group table has no identity");
  std::vector<int> inverse(size, -1);
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      if (table[a][b] == ident && table[b][a] == ident) inverse[a] = b;
    }
    if (inverse[a] < 0) throw Error(ErrorKind::ValidationError, "group table lacks an inverse");
  }
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      for (int c = 0; c < size; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw Error(ErrorKind::ValidationError, "group table is not associative");
        }
      }
    }
  }
  DiscreteGroup g;
  g.kind_ = Kind::Table;
  g.order_ = size;
  g.table_identity_ = ident;
  g.table_ = std::move(table);
  g.table_inverse_ = std::move(inverse);
  for (int s : generators) {
    if (s < 0 || s >= size) throw Error(ErrorKind::ValidationError, "generator out of range");
    g.generators_.push_back(element(s));
  }
  return g;
}

std::string DiscreteGroup::name() const {
  switch (kind_) {
    case Kind::IntegerLattice: return "Z^" + std::to_string(rank_);
    case Kind::Heisenberg: return "Heisenberg3";
    case Kind::Cyclic: return "Cyclic" + std::to_string(order_);
    case Kind::Table: return "Table" + std::to_string(order_);
  }
  return "unknown";
}

GroupElement DiscreteGroup::identity() const {
  return kind_ == Kind::Table ? element(table_identity_) : GroupElement{};
}

GroupElement DiscreteGroup::mul(const GroupElement& a, const GroupElement& b) const {
  switch (kind_) {
    case Kind::IntegerLattice:
      return element(a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]);
    case Kind::Heisenberg:
      // x^a y^b z^c x^a' y^b' z^c' = x^{a+a'} y^{b+b'} z^{c+c'-a'b}
      return element(a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2] - b.c[0] * a.c[1]);
    case Kind::Cyclic:
      return element(floor_mod(a.c[0] + b.c[0], order_));
    case Kind::Table:
      return element(table_[static_cast<std::size_t>(a.c[0])][static_cast<std::size_t>(b.c[0])]);
  }
  return {};
}

GroupElement DiscreteGroup::inv(const GroupElement& a) const {
  switch (kind_) {
    case Kind::IntegerLattice: return element(-a.c[0], -a.c[1], -a.c[2], -a.c[3]);
    case Kind::Heisenberg: return element(-a.c[0], -a.c[1], -a.c[2] - a.c[0] * a.c[1]);
    case Kind::Cyclic: return element(floor_mod(-a.c[0], order_));
    case Kind::Table: return element(table_inverse_[static_cast<std::size_t>(a.c[0])]);
  }
  return {};
}

bool DiscreteGroup::audit_words(int max_length) const {
  std::vector<GroupElement> letters;
  for (const auto& s : generators_) {
    letters.push_back(s);
    letters.push_back(inv(s));
  }
  std::vector<GroupElement> words{identity()};
  std::vector<GroupElement> frontier{identity()};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<GroupElement> next;
    for (const auto& w : frontier) {
      for (const auto& l : letters) next.push_back(mul(w, l));
    }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  const GroupElement e = identity();
  for (const auto& a : words) {
    if (mul(a, e) != a || mul(e, a) != a) return false;
    if (mul(a, inv(a)) != e || mul(inv(a), a) != e) return false;
  }
  // Associativity on generator letters against all words.
  for (const auto& a : words) {
    for (const auto& b : letters) {
      for (const auto& c : letters) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        if (mul(mul(b, a), c) != mul(b, mul(a, c))) return false;
      }
    }
  }
  return true;
}

FolnerSet::FolnerSet(std::vector<GroupElement> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool FolnerSet::contains(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

FolnerSet folner_boxes(const DiscreteGroup& group, long n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "box radius must be non-negative");
  std::vector<GroupElement> out;
  switch (group.kind()) {
    case DiscreteGroup::Kind::IntegerLattice: {
      const int d = group.rank();
      GroupElement g;
      std::function<void(int)> fill = [&](int axis) {
        if (axis == d) {
          out.push_back(g);
          return;
        }
        for (long v = -n; v <= n; ++v) {
          g.c[static_cast<std::size_t>(axis)] = v;
          fill(axis + 1);
        }
        g.c[static_cast<std::size_t>(axis)] = 0;
      };
      fill(0);
      break;
    }
    case DiscreteGroup::Kind::Heisenberg: {
      const long cmax = n * n;
      for (long a = -n; a <= n; ++a) {
        for (long b = -n; b <= n; ++b) {
          for (long c = -cmax; c <= cmax; ++c) out.push_back(element(a, b, c));
        }
      }
      break;
    }
    case DiscreteGroup::Kind::Cyclic:
      for (std::int64_t a = 0; a < group.order(); ++a) out.push_back(element(a));
      break;
    case DiscreteGroup::Kind::Table:
      throw Error(ErrorKind::UnsupportedGroup, "table groups have no declared Folner sequence");
  }
  return FolnerSet(std::move(out));
}

FolnerSequence box_sequence(const DiscreteGroup& group) {
  if (group.kind() == DiscreteGroup::Kind::Table) {
    throw Error(ErrorKind::UnsupportedGroup, "table groups have no declared Folner sequence");
  }
  return {group.name() + " boxes", [group](long n) { return folner_boxes(group, n); }};
}

FolnerSequence interval_sequence(const DiscreteGroup& group) {
  if (group.kind() != DiscreteGroup::Kind::IntegerLattice || group.rank() != 1) {
    throw Error(ErrorKind::UnsupportedGroup, "interval sequence is defined on Z only");
  }
  return {"Z intervals [0,n)", [](long n) {
            std::vector<GroupElement> out;
            for (long v = 0; v < n; ++v) out.push_back(element(v));
            return FolnerSet(std::move(out));
          }};
}

DefectCount folner_defect(const DiscreteGroup& group, const FolnerSet& f,
                          const std::vector<GroupElement>& k) {
  if (f.empty()) throw Error(ErrorKind::InvalidArgument, "Folner set must be nonempty");
  ElementSet kf;
  kf.reserve(f.size() * std::max<std::size_t>(k.size(), 1));
  for (const auto& a : k) {
    for (const auto& b : f.elements()) kf.insert(group.mul(a, b));
  }
  std::size_t common = 0;
  for (const auto& b : f.elements()) {
    if (kf.contains(b)) ++common;
  }
  return {kf.size() + f.size() - 2 * common, f.size()};
}

struct TemperedAudit::Impl {
  ElementSet inverse_union;  // {u^{-1} : u in F_1 u ... u F_{n-1}}
  ElementSet product;
};

TemperedAudit::TemperedAudit(const DiscreteGroup& group, std::size_t max_set_size)
    : group_(group), max_set_size_(max_set_size), impl_(std::make_unique<Impl>()) {}

TemperedAudit::~TemperedAudit() = default;

double TemperedAudit::push(const FolnerSet& f) {
  if (f.empty()) throw Error(ErrorKind::InvalidArgument, "Folner set must be nonempty");
  double ratio = 0.0;
  if (!impl_->inverse_union.empty()) {
    auto& product = impl_->product;
    product.clear();
    for (const auto& u : impl_->inverse_union) {
      for (const auto& g : f.elements()) {
        product.insert(group_.mul(u, g));
      }
      if (product.size() > max_set_size_) {
        throw Error(ErrorKind::SetSizeExceeded,
                    "tempered union exceeds " + std::to_string(max_set_size_) + " elements");
      }
    }
    ratio = static_cast<double>(product.size()) / static_cast<double>(f.size());
  }
  for (const auto& g : f.elements()) impl_->inverse_union.insert(group_.inv(g));
  if (impl_->inverse_union.size() > max_set_size_) {
    throw Error(ErrorKind::SetSizeExceeded, "cumulative Folner union exceeds the cap");
  }
  return ratio;
}

double tempered_constant(const DiscreteGroup& group, const FolnerSequence& seq, long big_n,
                         std::size_t max_set_size) {
  if (big_n < 2) throw Error(ErrorKind::InvalidArgument, "tempered_constant needs N >= 2");
  TemperedAudit audit(group, max_set_size);
  double worst = 0.0;
  for (long n = 1; n <= big_n; ++n) {
    const FolnerSet f = seq(n);
    if (f.size() > max_set_size) throw Error(ErrorKind::SetSizeExceeded, "Folner set too large");
    const double r = audit.push(f);
    if (n >= 2) worst = std::max(worst, r);
  }
  return worst;
}

Matrix UnitaryAction::unitary(const GroupElement& g) const {
  const auto& u = generator_unitaries_;
  switch (group_.kind()) {
    case DiscreteGroup::Kind::IntegerLattice: {
      Matrix out = identity(n_);
      for (int i = 0; i < group_.rank(); ++i) {
        out = out * unitary_power(u[static_cast<std::size_t>(i)], g.c[static_cast<std::size_t>(i)]);
      }
      return out;
    }
    case DiscreteGroup::Kind::Heisenberg:
      return unitary_power(u[0], g.c[0]) * unitary_power(u[1], g.c[1]) *
             unitary_power(u[2], g.c[2]);
    case DiscreteGroup::Kind::Cyclic:
      return unitary_power(u[0], g.c[0]);
    case DiscreteGroup::Kind::Table:
      return table_unitaries_[static_cast<std::size_t>(g.c[0])];
  }
  return identity(n_);
}

UnitaryAction build_action(const DiscreteGroup& group, std::vector<Matrix> generator_unitaries,
                           const State& state) {
  const Tolerances& tol = state.tolerances();
  const Index n = state.dim();
  if (generator_unitaries.size() != group.generators().size()) {
    throw Error(ErrorKind::ValidationError,
                group.name() + " has " + std::to_string(group.generators().size()) +
                    " generators but " + std::to_string(generator_unitaries.size()) +
                    " unitaries were given");
  }
  for (const Matrix& u : generator_unitaries) {
    require_dim(u, n, "generator unitary");
    require_finite(u, "generator unitary");
    if (!near(u * u.adjoint(), identity(n), tol)) {
      throw Error(ErrorKind::ValidationError, "generator image is not unitary");
    }
  }
  const auto& u = generator_unitaries;
  const auto violated = [](const std::string& what) {
    throw Error(ErrorKind::GroupRelationViolated, what);
  };
  UnitaryAction action(group, n, generator_unitaries);
  switch (group.kind()) {
    case DiscreteGroup::Kind::IntegerLattice:
      for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
          if (!near(u[i] * u[j], u[j] * u[i], tol)) violated("Z^d generators do not commute");
        }
      }
      break;
    case DiscreteGroup::Kind::Heisenberg:
      if (!near(u[0] * u[1], u[1] * u[0] * u[2], tol)) violated("xy = yxz fails");
      if (!near(u[0] * u[2], u[2] * u[0], tol)) violated("xz = zx fails");
      if (!near(u[1] * u[2], u[2] * u[1], tol)) violated("yz = zy fails");
      break;
    case DiscreteGroup::Kind::Cyclic:
      if (!near(unitary_power(u[0], group.order()), identity(n), tol)) violated("u^N = I fails");
      break;
    case DiscreteGroup::Kind::Table: {
      const auto order = static_cast<std::size_t>(group.order());
      std::vector<Matrix> images(order);
      std::vector<bool> seen(order, false);
      const GroupElement e = group.identity();
      images[static_cast<std::size_t>(e.c[0])] = identity(n);
      seen[static_cast<std::size_t>(e.c[0])] = true;
      std::queue<GroupElement> pending;
      pending.push(e);
      while (!pending.empty()) {
        const GroupElement g = pending.front();
        pending.pop();
        for (std::size_t s = 0; s < u.size(); ++s) {
          const GroupElement h = group.mul(g, group.generators()[s]);
          const auto idx = static_cast<std::size_t>(h.c[0]);
          if (!seen[idx]) {
            seen[idx] = true;
            images[idx] = images[static_cast<std::size_t>(g.c[0])] * u[s];
            pending.push(h);
          }
        }
      }
      if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw Error(ErrorKind::ValidationError, "generators do not generate the table group");
      }
      for (std::size_t a = 0; a < order; ++a) {
        for (std::size_t b = 0; b < order; ++b) {
          const GroupElement ab = group.mul(element(static_cast<std::int64_t>(a)),
                                            element(static_cast<std::int64_t>(b)));
          if (!near(images[a] * images[b], images[static_cast<std::size_t>(ab.c[0])], tol)) {
            violated("table representation is not a homomorphism");
          }
        }
      }
      action.table_unitaries_ = std::move(images);
      break;
    }
  }
  for (const Matrix& g : u) {
    if (!near(g * state.rho(), state.rho() * g, tol)) {
      throw Error(ErrorKind::NotInvariant, "state is not invariant under a generator");
    }
  }
  return action;
}

Matrix group_average(const UnitaryAction& action, const FolnerSet& f, const Matrix& x) {
  require_dim(x, action.dim(), "group_average input");
  if (f.empty()) throw Error(ErrorKind::InvalidArgument, "Folner set must be nonempty");
  const auto& els = f.elements();
  const Matrix sum = tree_sum(
      [&](std::size_t k) {
        const Matrix u = action.unitary(els[k]);
        return Matrix(u * x * u.adjoint());
      },
      0, els.size());
  return sum / static_cast<double>(els.size());
}

QuantumMap group_average_map(const UnitaryAction& action, const FolnerSet& f) {
  if (f.empty()) throw Error(ErrorKind::InvalidArgument, "Folner set must be nonempty");
  const auto& els = f.elements();
  const Matrix sum = tree_sum(
      [&](std::size_t k) {
        const Matrix u = action.unitary(els[k]);
        return sandwich_superop(u, u.adjoint());
      },
      0, els.size());
  return QuantumMap::from_superop(sum / static_cast<double>(els.size()));
}

ErgodicDecomposition invariant_expectation(const UnitaryAction& action, const StandardForm& sf) {
  const Index n = sf.dim();
  if (action.dim() != n) throw Error(ErrorKind::DimensionMismatch, "action and state dims differ");
  const Tolerances& tol = sf.tolerances();
  const auto& us = action.generator_unitaries();
  const Index n2 = n * n;
  Matrix stacked = Matrix::Zero(std::max<Index>(1, static_cast<Index>(us.size())) * n2, n2);
  for (std::size_t s = 0; s < us.size(); ++s) {
    const Matrix t = gns_operator(QuantumMap::unitary_conjugation(us[s]), sf);
    stacked.middleRows(static_cast<Index>(s) * n2, n2) = t - Matrix::Identity(n2, n2);
  }
  Matrix p = us.empty() ? Matrix(Matrix::Identity(n2, n2)) : projector(null_space(stacked, tol), n2);
  return make_decomposition(std::move(p), commutant(n, us, tol), sf);
}

std::vector<ProfilePoint> theorem32_profile(const UnitaryAction& action, const FolnerSequence& seq,
                                            const StandardForm& sf,
                                            const std::vector<Functional>& psi,
                                            const std::vector<long>& n_list,
                                            std::size_t max_set_size) {
  const ErgodicDecomposition dec = invariant_expectation(action, sf);
  std::vector<ProfilePoint> out;
  for (long n : n_list) {
    const FolnerSet f = seq(n);
    if (f.size() > max_set_size) {
      throw Error(ErrorKind::SetSizeExceeded, "Folner set exceeds the configured cap");
    }
    const QuantumMap avg = group_average_map(action, f);
    const double gns = op_norm(gns_operator(avg, sf) - dec.projection);
    for (std::size_t k = 0; k < psi.size(); ++k) {
      out.push_back({static_cast<double>(n), k, predual_distance(avg, dec.expectation, psi[k]), gns});
    }
  }
  return out;
}

}  // namespace vnerg
