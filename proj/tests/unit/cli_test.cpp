#include "runner.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "vnerg/error.hpp"

namespace vnerg::cli {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data(const std::string& name) { return read_file(fs::path(VNERG_TEST_DATA_DIR) / name); }

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

struct Invocation {
  int exit_code = -1;
  std::string stdout_text;
};

Invocation invoke(const std::string& args, const std::string& env = "") {
  const fs::path capture = fs::temp_directory_path() / ("vnerg_cli_" + std::to_string(::getpid()));
  const std::string cmd = env + " " + std::string(VNERG_CLI_PATH) + " " + args + " > " +
                          capture.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Invocation r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.stdout_text = read_file(capture);
  fs::remove(capture);
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "vnerg_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(ParseComplex, EntryForms) {
  EXPECT_EQ(parse_complex("1"), Complex(1, 0));
  EXPECT_EQ(parse_complex("-2.5"), Complex(-2.5, 0));
  EXPECT_EQ(parse_complex("+0.5"), Complex(0.5, 0));
  EXPECT_EQ(parse_complex("3i"), Complex(0, 3));
  EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
  EXPECT_EQ(parse_complex("i"), Complex(0, 1));
  EXPECT_EQ(parse_complex("1+2i"), Complex(1, 2));
  EXPECT_EQ(parse_complex("1-2i"), Complex(1, -2));
  EXPECT_EQ(parse_complex("1e-3-2E+2i"), Complex(1e-3, -200));
  EXPECT_EQ(parse_complex("-1e-3i"), Complex(0, -1e-3));
  for (const char* bad : {"", "abc", "1+", "1..2", "1+2j", "nan", "+"}) {
    EXPECT_THROW(parse_complex(bad), Error) << bad;
  }
}

TEST(ParseComplex, FormatRoundTripIsExact) {
  for (Complex z : {Complex(0.1, -1.0 / 3), Complex(1e-300, 0), Complex(-0.0, 2.5),
                    Complex(std::acos(-1.0), std::exp(1.0))}) {
    EXPECT_EQ(parse_complex(format_complex(z)), z);
  }
}

TEST(ParseProblem, MinimalClassifyIsValid) {
  const ExperimentConfig c = parse_problem(data("classify_identity.cfg"));
  EXPECT_EQ(c.kind, Kind::Classify);
  ASSERT_EQ(c.map.kraus.size(), 1u);
  EXPECT_TRUE(c.map.kraus[0].isApprox(Matrix::Identity(2, 2)));
  EXPECT_EQ(run(c).exit_code, 0);
}

TEST(ParseProblem, ConformanceFileCoversGrammar) {
  const ExperimentConfig c = parse_problem(data("grammar_conformance.cfg"));
  EXPECT_EQ(c.kind, Kind::Group);
  EXPECT_EQ(c.dim, 2);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_EQ(c.trials, 0);
  EXPECT_EQ(c.n_list, (std::vector<long>{1, 2, 3, 7, 10, 11}));
  EXPECT_EQ(c.lambda_list, (std::vector<double>{1, 0.5, 2.5e-3}));
  ASSERT_TRUE(c.group);
  EXPECT_EQ(c.group->name, "cyclic");
  EXPECT_EQ(c.group->parameter, 4);
  EXPECT_EQ(c.folner, "boxes");
  EXPECT_EQ(c.tol_null, 1e-10);
  ASSERT_EQ(c.map.kraus.size(), 1u);
  EXPECT_EQ(c.map.kraus[0](0, 1), Complex(0, -2.5));
  EXPECT_EQ(c.map.kraus[0](1, 0), Complex(0.5, -1e-3));
  EXPECT_EQ(c.map.kraus[0](1, 1), Complex(-300, 0.4));
  ASSERT_EQ(c.maps.size(), 1u);
  EXPECT_TRUE(c.maps[0].superop.has_value());
  EXPECT_TRUE(c.state && c.hamiltonian);
  EXPECT_EQ(c.jumps.size(), 1u);
  EXPECT_EQ(c.unitaries.size(), 1u);
  EXPECT_EQ(c.psi.size(), 1u);
}

TEST(ParseProblem, EmitRoundTrip) {
  for (const char* name :
       {"grammar_conformance.cfg", "classify_pinching.cfg", "duality_phase.cfg",
        "semigroup_dephasing.cfg", "group_z2_diagonal.cfg", "folner_z_intervals.cfg"}) {
    const ExperimentConfig c = parse_problem(data(name));
    const std::string text = emit(c);
    EXPECT_EQ(parse_problem(text), c) << name;
    EXPECT_EQ(emit(parse_problem(text)), text) << name;
  }
}

TEST(ParseProblem, Errors) {
  const auto line_of = [](const std::string& text) {
    try {
      parse_problem(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError);
      return std::string(e.what());
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return std::string();
  };
  EXPECT_NE(line_of(data("truncated_block.cfg")).find("line 3"), std::string::npos);
  EXPECT_NE(line_of("kind classify\ncolour blue\n").find("line 2"), std::string::npos);
  EXPECT_NE(line_of("kind nonsense\n").find("line 1"), std::string::npos);
  EXPECT_NE(line_of("seed 1\nseed 2\n").find("duplicate"), std::string::npos);
  EXPECT_NE(line_of("begin matrix kraus\n1 0\n0\nend matrix\n").find("ragged"), std::string::npos);
  EXPECT_NE(line_of("begin matrix kraus\n1 0\nend matrix\n").find("square"), std::string::npos);
  EXPECT_NE(line_of("begin matrix weights\n1\nend matrix\n").find("role"), std::string::npos);
  EXPECT_NE(line_of("begin matrix kraus\n1 x\nend matrix\n").find("line 2"), std::string::npos);
  EXPECT_NE(line_of("n_list 5..2\n").find("range"), std::string::npos);
  EXPECT_NE(line_of("group Q8\n").find("group"), std::string::npos);
  EXPECT_NE(line_of("begin map\nbegin matrix state\n1\nend matrix\nend map\n").find("map"),
            std::string::npos);
  EXPECT_NE(line_of("begin map\n").find("line 1"), std::string::npos);
  EXPECT_NE(line_of("end matrix\n").find("line 1"), std::string::npos);
}

TEST(Run, ClassifyPinching) {
  const RunResult r = run(parse_problem(data("classify_pinching.cfg")));
  ASSERT_EQ(r.exit_code, 0) << r.message;
  const auto rows = csv_rows(r.csv);
  ASSERT_EQ(rows.size(), 2u);
  const auto& head = rows[0];
  const auto col = [&](const std::string& name) {
    return rows[1][static_cast<std::size_t>(std::find(head.begin(), head.end(), name) - head.begin())];
  };
  EXPECT_EQ(col("cp"), "true");
  EXPECT_EQ(col("unital"), "true");
  EXPECT_EQ(col("in_P_half"), "true");
  EXPECT_EQ(col("ks_samples_passed"), "40");
  EXPECT_EQ(col("dual_ks_samples_passed"), "40");
  EXPECT_EQ(r.csv.rfind("# theorem=Thm2.3", 0), 0u);
}

TEST(Run, ErgodicRootOfUnityZeros) {
  const RunResult r = run(parse_problem(data("ergodic_root_of_unity.cfg")));
  ASSERT_EQ(r.exit_code, 0) << r.message;
  const auto rows = csv_rows(r.csv);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n_or_lambda", "psi_id", "predual_distance", "gns_distance"}));
  ASSERT_EQ(rows.size(), 1u + 30u * 4u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const long n = std::stol(rows[k][0]);
    if (n % 3 == 0) {
      EXPECT_LE(std::stod(rows[k][2]), 1e-14) << "n=" << n;
      EXPECT_LE(std::stod(rows[k][3]), 1e-14) << "n=" << n;
    }
  }
}

TEST(Run, SemigroupDephasingClosedForm) {
  const RunResult r = run(parse_problem(data("semigroup_dephasing.cfg")));
  ASSERT_EQ(r.exit_code, 0) << r.message;
  EXPECT_EQ(r.csv.rfind("# theorem=Thm2.7", 0), 0u);
  const auto rows = csv_rows(r.csv);
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double lambda = std::stod(rows[k][0]);
    const double scale = rows[k][1] == "0" ? 1.0 : 2.0;
    EXPECT_NEAR(std::stod(rows[k][2]), scale * lambda / (lambda + 2), 1e-8);
  }
}

TEST(Run, GroupAndFolnerAudit) {
  const RunResult g = run(parse_problem(data("group_z2_diagonal.cfg")));
  ASSERT_EQ(g.exit_code, 0) << g.message;
  EXPECT_EQ(g.csv.rfind("# theorem=Thm3.2", 0), 0u);
  const RunResult f = run(parse_problem(data("folner_z_intervals.cfg")));
  ASSERT_EQ(f.exit_code, 0) << f.message;
  const auto rows = csv_rows(f.csv);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "|F_n|", "defect_per_generator",
                                               "cumulative_tempered_ratio"}));
  ASSERT_EQ(rows.size(), 13u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double n = std::stod(rows[k][0]);
    EXPECT_EQ(std::stod(rows[k][1]), n);
    EXPECT_DOUBLE_EQ(std::stod(rows[k][2]), 2.0 / n);
    EXPECT_LE(std::stod(rows[k][3]), 2.0);
  }
}

TEST(Run, FolnerAuditJoinsDefectsPerGenerator) {
  ExperimentConfig c;
  c.kind = Kind::FolnerAudit;
  c.group = GroupSpec{"heisenberg3", 0};
  c.n_list = {1, 2};
  const RunResult r = run(c);
  ASSERT_EQ(r.exit_code, 0) << r.message;
  const auto rows = csv_rows(r.csv);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(std::count(rows[2][2].begin(), rows[2][2].end(), ';'), 2);
}

TEST(Run, DualityCertificate) {
  const RunResult r = run(parse_problem(data("duality_phase.cfg")));
  ASSERT_EQ(r.exit_code, 0) << r.message;
  EXPECT_EQ(r.csv.rfind("# theorem=Thm1.1", 0), 0u);
  const auto rows = csv_rows(r.csv);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_LE(std::stod(rows[k][2]), std::stod(rows[k][3]) + 1e-10);
  }
}

TEST(Run, ExitCodes) {
  const RunResult noninvariant = run(parse_problem(data("group_noninvariant.cfg")));
  EXPECT_EQ(noninvariant.exit_code, 2);
  EXPECT_EQ(noninvariant.reason, "NotInvariant");
  EXPECT_TRUE(noninvariant.csv.empty());

  const RunResult count = run(parse_problem(data("group_wrong_generator_count.cfg")));
  EXPECT_EQ(count.exit_code, 1);
  EXPECT_EQ(count.reason, "ValidationError");

  ExperimentConfig no_seed = parse_problem(data("classify_pinching.cfg"));
  no_seed.seed.reset();
  EXPECT_EQ(run(no_seed).reason, "ValidationError");
  no_seed.trials = 0;
  EXPECT_EQ(run(no_seed).exit_code, 0);

  ExperimentConfig faithless = parse_problem(data("classify_identity.cfg"));
  faithless.state = Matrix::Zero(2, 2);
  faithless.state->operator()(0, 0) = 1.0;
  const RunResult nf = run(faithless);
  EXPECT_EQ(nf.exit_code, 2);
  EXPECT_EQ(nf.reason, "NotFaithful");

  ExperimentConfig outside = parse_problem(data("classify_identity.cfg"));
  outside.kind = Kind::Ergodic;
  outside.n_list = {1};
  outside.map.kraus[0] *= 1.5;
  const RunResult np = run(outside);
  EXPECT_EQ(np.exit_code, 2);
  EXPECT_EQ(np.reason, "NotInP_half");

  ExperimentConfig mismatch = parse_problem(data("classify_identity.cfg"));
  mismatch.dim = 3;
  EXPECT_EQ(run(mismatch).exit_code, 1);
}

TEST(Run, DeterministicOutput) {
  for (const char* name : {"classify_pinching.cfg", "duality_phase.cfg", "ergodic_root_of_unity.cfg"}) {
    const ExperimentConfig c = parse_problem(data(name));
    EXPECT_EQ(run(c).csv, run(c).csv) << name;
  }
}

TEST(WriteAtomic, ReplacesTargetWithoutLeftovers) {
  const fs::path out = scratch("atomic.csv");
  write_atomic(out.string(), "first\n");
  write_atomic(out.string(), "second\n");
  EXPECT_EQ(read_file(out), "second\n");
  for (const auto& entry : fs::directory_iterator(out.parent_path())) {
    EXPECT_EQ(entry.path().string().find(".tmp."), std::string::npos);
  }
  EXPECT_THROW(write_atomic("/nonexistent-dir/x.csv", "x"), Error);
}

TEST(Binary, EndToEnd) {
  const fs::path dir(VNERG_TEST_DATA_DIR);
  const fs::path out = scratch("pinching.csv");
  fs::remove(out);
  Invocation ok = invoke("classify --config " + (dir / "classify_pinching.cfg").string() +
                         " --out " + out.string());
  EXPECT_EQ(ok.exit_code, 0);
  const std::string first = read_file(out);
  EXPECT_NE(first.find("true,true"), std::string::npos);
  invoke("classify --config " + (dir / "classify_pinching.cfg").string() + " --out " + out.string());
  EXPECT_EQ(read_file(out), first);

  const fs::path seeded = scratch("seeded.csv");
  invoke("classify --seed 99 --tol-psd 1e-7 --tol-eq 1e-6 --config " +
         (dir / "classify_pinching.cfg").string() + " --out " + seeded.string());
  EXPECT_TRUE(fs::exists(seeded));

  const fs::path blocked = scratch("blocked.csv");
  fs::remove(blocked);
  Invocation hyp = invoke("group --config " + (dir / "group_noninvariant.cfg").string() +
                          " --out " + blocked.string());
  EXPECT_EQ(hyp.exit_code, 2);
  EXPECT_EQ(hyp.stdout_text, "reason: NotInvariant\n");
  EXPECT_FALSE(fs::exists(blocked));

  Invocation parse = invoke("classify --config " + (dir / "truncated_block.cfg").string() +
                            " --out " + blocked.string());
  EXPECT_EQ(parse.exit_code, 1);
  EXPECT_EQ(parse.stdout_text, "reason: ParseError\n");

  EXPECT_EQ(invoke("classify --config /nonexistent.cfg --out " + blocked.string()).exit_code, 1);
  EXPECT_EQ(invoke("ergodic --config " + (dir / "classify_pinching.cfg").string() + " --out " +
                   blocked.string())
                .exit_code,
            1);

  Invocation capped = invoke("folner-audit --config " + (dir / "folner_z_intervals.cfg").string() +
                                 " --out " + blocked.string(),
                             "VNERG_MAX_SETSIZE=20");
  EXPECT_EQ(capped.exit_code, 1);
  EXPECT_EQ(capped.stdout_text, "reason: SetSizeExceeded\n");
}

}  // namespace
}  // namespace vnerg::cli
