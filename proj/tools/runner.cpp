#include "runner.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

#include "vnerg/vnerg.hpp"

namespace vnerg::cli {

namespace {

constexpr std::pair<Kind, std::string_view> kKindNames[] = {
    {Kind::Classify, "classify"}, {Kind::Ergodic, "ergodic"},
    {Kind::Semigroup, "semigroup"}, {Kind::Group, "group"},
    {Kind::FolnerAudit, "folner-audit"}, {Kind::Duality, "duality"},
};

const std::vector<std::string> kRoles{"kraus", "superop", "state", "hamiltonian",
                                      "jump",  "unitary", "psi"};

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ValidationError, what); }

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

double parse_real(std::string_view s, std::size_t line) {
  double v = 0.0;
  if (!parse_number(s, v) || !std::isfinite(v)) parse_fail(line, "bad number '" + std::string(s) + "'");
  return v;
}

long parse_integer(std::string_view s, std::size_t line) {
  long v = 0;
  if (!parse_number(s, v)) parse_fail(line, "bad integer '" + std::string(s) + "'");
  return v;
}

struct Block {
  std::string role;
  std::size_t fence_line = 0;
  std::vector<std::vector<Complex>> rows;
};

Matrix finish_block(const Block& b) {
  if (b.rows.empty()) parse_fail(b.fence_line, "empty matrix block");
  const std::size_t cols = b.rows.front().size();
  if (b.rows.size() != cols) parse_fail(b.fence_line, "matrix block is not square");
  Matrix m(static_cast<Index>(cols), static_cast<Index>(cols));
  for (std::size_t i = 0; i < cols; ++i) {
    if (b.rows[i].size() != cols) parse_fail(b.fence_line, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = b.rows[i][j];
  }
  return m;
}

void emit_matrix(std::ostream& out, const std::string& role, const Matrix& m) {
  out << "begin matrix " << role << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_complex(m(i, j));
    out << '\n';
  }
  out << "end matrix\n";
}

void emit_map(std::ostream& out, const MapSpec& m) {
  for (const Matrix& k : m.kraus) emit_matrix(out, "kraus", k);
  if (m.superop) emit_matrix(out, "superop", *m.superop);
}

// ---- run helpers --------------------------------------------------------

struct Context {
  const ExperimentConfig& config;
  Tolerances tol;
  Index n = 0;
};

void note_dim(Index& n, Index candidate, const std::string& what) {
  if (n == 0) {
    n = candidate;
  } else if (n != candidate) {
    invalid(what + " has dimension " + std::to_string(candidate) + ", expected " + std::to_string(n));
  }
}

Index infer_dim(const ExperimentConfig& c) {
  Index n = c.dim ? static_cast<Index>(*c.dim) : 0;
  const auto map_dims = [&](const MapSpec& m) {
    for (const Matrix& k : m.kraus) note_dim(n, k.rows(), "kraus matrix");
    if (m.superop) {
      const auto root = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(m.superop->rows()))));
      if (root * root != m.superop->rows()) invalid("superop size is not a square");
      note_dim(n, root, "superop");
    }
  };
  map_dims(c.map);
  for (const MapSpec& m : c.maps) map_dims(m);
  if (c.state) note_dim(n, c.state->rows(), "state");
  if (c.hamiltonian) note_dim(n, c.hamiltonian->rows(), "hamiltonian");
  for (const Matrix& m : c.jumps) note_dim(n, m.rows(), "jump");
  for (const Matrix& m : c.unitaries) note_dim(n, m.rows(), "unitary");
  for (const Matrix& m : c.psi) note_dim(n, m.rows(), "psi");
  return n;
}

QuantumMap build_map(const MapSpec& m, const Tolerances& tol) {
  if (m.superop && !m.kraus.empty()) invalid("give either kraus or superop blocks, not both");
  if (m.superop) return QuantumMap::from_superop(*m.superop);
  if (m.kraus.empty()) invalid("no map given (kraus or superop block required)");
  return QuantumMap::from_kraus(m.kraus, tol);
}

State build_state(const Context& ctx) {
  if (ctx.config.state) return State::from_density(*ctx.config.state, ctx.tol);
  return State::tracial(ctx.n, ctx.tol);
}

std::vector<Functional> build_psi(const Context& ctx) {
  if (ctx.config.psi.empty()) return matrix_unit_battery(ctx.n);
  std::vector<Functional> out;
  for (const Matrix& s : ctx.config.psi) out.emplace_back(s);
  return out;
}

ErgodicOptions sampling(const ExperimentConfig& c) {
  ErgodicOptions o;
  o.trials = c.trials.value_or(32);
  if (o.trials < 0) invalid("trials must be non-negative");
  if (o.trials > 0 && !c.seed) invalid("seed is required for sampled checks");
  o.seed = c.seed.value_or(0);
  return o;
}

DiscreteGroup build_group(const ExperimentConfig& c) {
  if (!c.group) invalid("group directive required");
  const GroupSpec& g = *c.group;
  if (g.name == "Zd") return DiscreteGroup::integer_lattice(static_cast<int>(g.parameter));
  if (g.name == "heisenberg3") return DiscreteGroup::heisenberg();
  if (g.name == "cyclic") return DiscreteGroup::cyclic(g.parameter);
  throw Error(ErrorKind::UnsupportedGroup, "unknown group " + g.name);
}

FolnerSequence build_sequence(const ExperimentConfig& c, const DiscreteGroup& g) {
  const std::string name = c.folner.value_or("boxes");
  if (name == "boxes") return box_sequence(g);
  if (name == "intervals") return interval_sequence(g);
  invalid("unknown folner sequence " + name);
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

void profile_csv(std::ostringstream& out, const std::vector<ProfilePoint>& profile) {
  out << "n_or_lambda,psi_id,predual_distance,gns_distance\n";
  for (const ProfilePoint& p : profile) {
    out << format_double(p.parameter) << ',' << p.psi_index << ','
        << format_double(p.predual_distance) << ',' << format_double(p.gns_distance) << '\n';
  }
}

std::string run_classify(const Context& ctx) {
  const QuantumMap map = build_map(ctx.config.map, ctx.tol);
  const StandardForm sf(build_state(ctx));
  const ErgodicOptions o = sampling(ctx.config);
  const ClassReport r = classify(map, sf, o.trials, o.seed);
  const ClassReport d = classify(dual_map(map, sf), sf, o.trials, o.seed);
  std::ostringstream out;
  out << "# theorem=Thm2.3 kind=classify\n";
  out << "cp,unital,subunital,invariant,subinvariant,l2_contraction,in_P_half,trials,"
         "positivity_samples_passed,ks_samples_passed,choi_min_eigenvalue,"
         "unit_defect_min_eigenvalue,state_defect_min_eigenvalue,gns_norm,ks_max_residual,"
         "dual_ks_samples_passed,dual_ks_max_residual\n";
  out << bool_str(r.cp) << ',' << bool_str(r.unital) << ',' << bool_str(r.subunital) << ','
      << bool_str(r.invariant) << ',' << bool_str(r.subinvariant) << ','
      << bool_str(r.l2_contraction) << ',' << bool_str(r.in_P_half) << ',' << r.trials << ','
      << r.positivity_samples_passed << ',' << r.ks_samples_passed << ','
      << format_double(r.choi_min_eigenvalue) << ',' << format_double(r.unit_defect_min_eigenvalue)
      << ',' << format_double(r.state_defect_min_eigenvalue) << ',' << format_double(r.gns_norm)
      << ',' << format_double(r.ks_max_residual) << ',' << d.ks_samples_passed << ','
      << format_double(d.ks_max_residual) << '\n';
  return out.str();
}

std::string run_ergodic(const Context& ctx) {
  if (ctx.config.n_list.empty()) invalid("n_list required");
  const QuantumMap map = build_map(ctx.config.map, ctx.tol);
  const StandardForm sf(build_state(ctx));
  const auto profile =
      convergence_profile(map, sf, build_psi(ctx), ctx.config.n_list, sampling(ctx.config));
  std::ostringstream out;
  out << "# theorem=Thm2.3 kind=ergodic\n";
  profile_csv(out, profile);
  return out.str();
}

std::string run_semigroup(const Context& ctx) {
  if (ctx.config.lambda_list.empty()) invalid("lambda_list required");
  const Matrix h = ctx.config.hamiltonian.value_or(Matrix::Zero(ctx.n, ctx.n));
  const LindbladGenerator gen(h, ctx.config.jumps, ctx.tol);
  const StandardForm sf(build_state(ctx));
  const SemigroupResult r = semigroup_expectation(gen, sf, ctx.config.lambda_list, build_psi(ctx));
  std::ostringstream out;
  out << "# theorem=Thm2.7 kind=semigroup\n";
  profile_csv(out, r.profile);
  return out.str();
}

std::string run_group(const Context& ctx, const RunOptions& opts) {
  if (ctx.config.n_list.empty()) invalid("n_list required");
  const DiscreteGroup g = build_group(ctx.config);
  const FolnerSequence seq = build_sequence(ctx.config, g);
  const StandardForm sf(build_state(ctx));
  const UnitaryAction action = build_action(g, ctx.config.unitaries, sf.state());
  const auto profile =
      theorem32_profile(action, seq, sf, build_psi(ctx), ctx.config.n_list, opts.max_set_size);
  std::ostringstream out;
  out << "# theorem=Thm3.2 kind=group\n";
  profile_csv(out, profile);
  return out.str();
}

std::string run_folner_audit(const Context& ctx, const RunOptions& opts) {
  if (ctx.config.n_list.empty()) invalid("n_list required");
  for (long n : ctx.config.n_list) {
    if (n < 1) invalid("folner-audit indices start at 1");
  }
  const DiscreteGroup g = build_group(ctx.config);
  const FolnerSequence seq = build_sequence(ctx.config, g);
  const long big_n = *std::max_element(ctx.config.n_list.begin(), ctx.config.n_list.end());
  std::map<long, bool> wanted;
  for (long n : ctx.config.n_list) wanted[n] = true;

  TemperedAudit audit(g, opts.max_set_size);
  std::map<long, std::string> rows;
  double cumulative = 0.0;
  for (long n = 1; n <= big_n; ++n) {
    const FolnerSet f = seq(n);
    if (f.size() > opts.max_set_size) {
      throw Error(ErrorKind::SetSizeExceeded, "Folner set exceeds the configured cap");
    }
    cumulative = std::max(cumulative, audit.push(f));
    if (!wanted.count(n)) continue;
    std::string defects;
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      if (s) defects += ';';
      defects += format_double(folner_defect(g, f, {g.generators()[s]}).value());
    }
    rows[n] = std::to_string(n) + ',' + std::to_string(f.size()) + ',' + defects + ',' +
              format_double(cumulative);
  }
  std::ostringstream out;
  out << "# theorem=Thm3.2 kind=folner-audit group=" << g.name() << " sequence=" << seq.name << '\n';
  out << "n,|F_n|,defect_per_generator,cumulative_tempered_ratio\n";
  for (long n : ctx.config.n_list) out << rows[n] << '\n';
  return out.str();
}

std::string run_duality(const Context& ctx) {
  if (ctx.config.maps.size() < 2) invalid("duality needs at least two map blocks");
  std::vector<QuantumMap> maps;
  for (const MapSpec& m : ctx.config.maps) maps.push_back(build_map(m, ctx.tol));
  const StandardForm sf(build_state(ctx));
  const DualityCertificate cert =
      theorem11_certificate(maps, sf, build_psi(ctx), sampling(ctx.config));
  std::ostringstream out;
  out << "# theorem=Thm1.1 kind=duality\n";
  out << "# max_violation=" << format_double(cert.max_violation)
      << " max_pointwise_violation=" << format_double(cert.max_pointwise_violation) << '\n';
  out << "first,second,predual_distance,eq8_bound,gns_distance,gns_dual_distance\n";
  for (const PairCertificate& p : cert.pairs) {
    out << p.first << ',' << p.second << ',' << format_double(p.predual_distance) << ','
        << format_double(p.eq8_bound) << ',' << format_double(p.gns_distance) << ','
        << format_double(p.gns_dual_distance) << '\n';
  }
  return out.str();
}

}  // namespace

std::string_view to_string(Kind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<Kind> kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

Complex parse_complex(std::string_view token) {
  const auto bad = [&] { throw Error(ErrorKind::ParseError, "bad complex entry '" + std::string(token) + "'"); };
  if (token.empty()) bad();
  const auto real_of = [&](std::string_view s) {
    double v = 0.0;
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.remove_prefix(1);
    if (!parse_number(s, v) || !std::isfinite(v)) bad();
    return v;
  };
  if (token.back() != 'i') {
    double v = 0.0;
    std::string_view s = token;
    if (s.size() > 1 && s.front() == '+') s.remove_prefix(1);
    if (!parse_number(s, v) || !std::isfinite(v)) bad();
    return {v, 0.0};
  }
  const std::string_view body = token.substr(0, token.size() - 1);
  // split at the last sign that is not leading and not an exponent sign
  std::size_t split_at = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  if (split_at == std::string_view::npos) return {0.0, real_of(body)};
  return {real_of(body.substr(0, split_at)), real_of(body.substr(split_at))};
}

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "i";
}

ExperimentConfig parse_problem(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::optional<Block> block;
  std::optional<MapSpec> map_block;
  std::size_t map_fence = 0;
  std::map<std::string, std::size_t> seen;

  const auto store = [&](Block b) {
    Matrix m = finish_block(b);
    if (map_block) {
      if (b.role == "kraus") {
        map_block->kraus.push_back(std::move(m));
      } else if (b.role == "superop") {
        if (map_block->superop) parse_fail(b.fence_line, "duplicate superop in map");
        map_block->superop = std::move(m);
      } else {
        parse_fail(b.fence_line, "only kraus/superop blocks allowed inside a map");
      }
      return;
    }
    const auto single = [&](std::optional<Matrix>& slot) {
      if (slot) parse_fail(b.fence_line, "duplicate " + b.role + " block");
      slot = std::move(m);
    };
    if (b.role == "kraus") c.map.kraus.push_back(std::move(m));
    else if (b.role == "superop") single(c.map.superop);
    else if (b.role == "state") single(c.state);
    else if (b.role == "hamiltonian") single(c.hamiltonian);
    else if (b.role == "jump") c.jumps.push_back(std::move(m));
    else if (b.role == "unitary") c.unitaries.push_back(std::move(m));
    else c.psi.push_back(std::move(m));
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::vector<std::string> tok = split(raw);
    if (tok.empty()) continue;

    if (block) {
      if (tok[0] == "end") {
        if (tok.size() != 2 || tok[1] != "matrix") parse_fail(line_no, "expected 'end matrix'");
        store(std::move(*block));
        block.reset();
        continue;
      }
      std::vector<Complex> row;
      for (const std::string& t : tok) {
        try {
          row.push_back(parse_complex(t));
        } catch (const Error& e) {
          parse_fail(line_no, e.what());
        }
      }
      block->rows.push_back(std::move(row));
      continue;
    }

    const std::string& key = tok[0];
    if (key == "begin") {
      if (tok.size() == 3 && tok[1] == "matrix") {
        if (std::find(kRoles.begin(), kRoles.end(), tok[2]) == kRoles.end()) {
          parse_fail(line_no, "unknown matrix role '" + tok[2] + "'");
        }
        block = Block{tok[2], line_no, {}};
      } else if (tok.size() == 2 && tok[1] == "map") {
        if (map_block) parse_fail(line_no, "nested map block");
        map_block = MapSpec{};
        map_fence = line_no;
      } else {
        parse_fail(line_no, "expected 'begin matrix <role>' or 'begin map'");
      }
      continue;
    }
    if (key == "end") {
      if (tok.size() == 2 && tok[1] == "map" && map_block) {
        c.maps.push_back(std::move(*map_block));
        map_block.reset();
        continue;
      }
      parse_fail(line_no, "unmatched '" + raw + "'");
    }

    if (seen.count(key)) parse_fail(line_no, "duplicate key '" + key + "'");
    seen[key] = line_no;
    const auto arity = [&](std::size_t k) {
      if (tok.size() != k + 1) parse_fail(line_no, "'" + key + "' takes " + std::to_string(k) + " value(s)");
    };
    if (key == "kind") {
      arity(1);
      c.kind = kind_from_string(tok[1]);
      if (!c.kind) parse_fail(line_no, "unknown kind '" + tok[1] + "'");
    } else if (key == "dim") {
      arity(1);
      c.dim = parse_integer(tok[1], line_no);
      if (*c.dim < 1) parse_fail(line_no, "dim must be positive");
    } else if (key == "seed") {
      arity(1);
      std::uint64_t s = 0;
      if (!parse_number(std::string_view(tok[1]), s)) parse_fail(line_no, "bad seed");
      c.seed = s;
    } else if (key == "trials") {
      arity(1);
      c.trials = static_cast<int>(parse_integer(tok[1], line_no));
    } else if (key == "n_list") {
      if (tok.size() < 2) parse_fail(line_no, "n_list needs values");
      for (std::size_t k = 1; k < tok.size(); ++k) {
        const auto dots = tok[k].find("..");
        if (dots == std::string::npos) {
          c.n_list.push_back(parse_integer(tok[k], line_no));
          continue;
        }
        const long a = parse_integer(std::string_view(tok[k]).substr(0, dots), line_no);
        const long b = parse_integer(std::string_view(tok[k]).substr(dots + 2), line_no);
        if (b < a) parse_fail(line_no, "empty range " + tok[k]);
        for (long v = a; v <= b; ++v) c.n_list.push_back(v);
      }
    } else if (key == "lambda_list") {
      if (tok.size() < 2) parse_fail(line_no, "lambda_list needs values");
      for (std::size_t k = 1; k < tok.size(); ++k) c.lambda_list.push_back(parse_real(tok[k], line_no));
    } else if (key == "group") {
      if (tok.size() < 2) parse_fail(line_no, "group needs a name");
      GroupSpec g{tok[1], 0};
      if (g.name == "Zd" || g.name == "cyclic") {
        arity(2);
        g.parameter = parse_integer(tok[2], line_no);
      } else if (g.name == "heisenberg3") {
        arity(1);
      } else {
        parse_fail(line_no, "unknown group '" + g.name + "'");
      }
      c.group = g;
    } else if (key == "folner") {
      arity(1);
      if (tok[1] != "boxes" && tok[1] != "intervals") parse_fail(line_no, "unknown folner sequence");
      c.folner = tok[1];
    } else if (key == "tol_psd" || key == "tol_eq" || key == "tol_null") {
      arity(1);
      const double v = parse_real(tok[1], line_no);
      (key == "tol_psd" ? c.tol_psd : key == "tol_eq" ? c.tol_eq : c.tol_null) = v;
    } else {
      parse_fail(line_no, "unknown key '" + key + "'");
    }
  }
  if (block) parse_fail(block->fence_line, "matrix block not closed");
  if (map_block) parse_fail(map_fence, "map block not closed");
  return c;
}

std::string emit(const ExperimentConfig& c) {
  std::ostringstream out;
  if (c.kind) out << "kind " << to_string(*c.kind) << '\n';
  if (c.dim) out << "dim " << *c.dim << '\n';
  if (c.seed) out << "seed " << *c.seed << '\n';
  if (c.trials) out << "trials " << *c.trials << '\n';
  if (!c.n_list.empty()) {
    out << "n_list";
    for (long n : c.n_list) out << ' ' << n;
    out << '\n';
  }
  if (!c.lambda_list.empty()) {
    out << "lambda_list";
    for (double l : c.lambda_list) out << ' ' << format_double(l);
    out << '\n';
  }
  if (c.group) {
    out << "group " << c.group->name;
    if (c.group->name != "heisenberg3") out << ' ' << c.group->parameter;
    out << '\n';
  }
  if (c.folner) out << "folner " << *c.folner << '\n';
  if (c.tol_psd) out << "tol_psd " << format_double(*c.tol_psd) << '\n';
  if (c.tol_eq) out << "tol_eq " << format_double(*c.tol_eq) << '\n';
  if (c.tol_null) out << "tol_null " << format_double(*c.tol_null) << '\n';
  emit_map(out, c.map);
  for (const MapSpec& m : c.maps) {
    out << "begin map\n";
    emit_map(out, m);
    out << "end map\n";
  }
  if (c.state) emit_matrix(out, "state", *c.state);
  if (c.hamiltonian) emit_matrix(out, "hamiltonian", *c.hamiltonian);
  for (const Matrix& m : c.jumps) emit_matrix(out, "jump", m);
  for (const Matrix& m : c.unitaries) emit_matrix(out, "unitary", m);
  for (const Matrix& m : c.psi) emit_matrix(out, "psi", m);
  return out.str();
}

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
  RunResult result;
  try {
    if (!config.kind) invalid("kind is required");
    Context ctx{config, {}, 0};
    if (config.tol_psd) ctx.tol.psd_floor = *config.tol_psd;
    if (config.tol_eq) ctx.tol.eq_rtol = *config.tol_eq;
    if (config.tol_null) ctx.tol.nullspace_rel = *config.tol_null;
    ctx.tol.validate();
    ctx.n = infer_dim(config);
    if (ctx.n == 0) {
      if (*config.kind != Kind::FolnerAudit) invalid("cannot determine the matrix dimension");
    }
    switch (*config.kind) {
      case Kind::Classify: result.csv = run_classify(ctx); break;
      case Kind::Ergodic: result.csv = run_ergodic(ctx); break;
      case Kind::Semigroup: result.csv = run_semigroup(ctx); break;
      case Kind::Group: result.csv = run_group(ctx, options); break;
      case Kind::FolnerAudit: result.csv = run_folner_audit(ctx, options); break;
      case Kind::Duality: result.csv = run_duality(ctx); break;
    }
  } catch (const Error& e) {
    result.exit_code = is_hypothesis_failure(e.kind()) ? 2 : 1;
    result.reason = std::string(vnerg::to_string(e.kind()));
    result.message = e.what();
    result.csv.clear();
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.reason = "InternalError";
    result.message = e.what();
    result.csv.clear();
  }
  return result;
}

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorKind::IoError, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::IoError, "cannot rename onto " + path);
  }
}

}  // namespace vnerg::cli
