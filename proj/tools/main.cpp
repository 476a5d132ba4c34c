#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "runner.hpp"
#include "vnerg/error.hpp"

namespace {

int fail(int code, std::string_view reason, const std::string& message) {
  std::cout << "reason: " << reason << '\n';
  std::cerr << message << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace vnerg;
  CLI::App app{"Mean ergodic experiments on finite-dimensional von Neumann algebras"};
  std::string kind_name;
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_psd;
  std::optional<double> tol_eq;
  app.add_option("kind", kind_name, "classify | ergodic | semigroup | group | folner-audit | duality")
      ->required();
  app.add_option("--config", config_path, "problem description file")->required();
  app.add_option("--out", out_path, "CSV output path")->required();
  app.add_option("--seed", seed, "seed for sampled checks (overrides the config)");
  app.add_option("--tol-psd", tol_psd, "PSD floor");
  app.add_option("--tol-eq", tol_eq, "relative equality tolerance");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const auto kind = cli::kind_from_string(kind_name);
  if (!kind) return fail(1, "InvalidArgument", "unknown kind " + kind_name);

  std::ifstream in(config_path, std::ios::binary);
  if (!in) return fail(1, "IoError", "cannot read " + config_path);
  std::ostringstream text;
  text << in.rdbuf();

  cli::ExperimentConfig config;
  try {
    config = cli::parse_problem(text.str());
  } catch (const Error& e) {
    return fail(1, to_string(e.kind()), e.what());
  }
  if (config.kind && *config.kind != *kind) {
    return fail(1, "ValidationError",
                "config declares kind " + std::string(cli::to_string(*config.kind)));
  }
  config.kind = kind;
  if (seed) config.seed = seed;
  if (tol_psd) config.tol_psd = tol_psd;
  if (tol_eq) config.tol_eq = tol_eq;

  cli::RunOptions options;
  if (const char* cap = std::getenv("VNERG_MAX_SETSIZE")) {
    try {
      options.max_set_size = std::stoull(cap);
    } catch (const std::exception&) {
      return fail(1, "InvalidArgument", "VNERG_MAX_SETSIZE must be a positive integer");
    }
  }

  const cli::RunResult result = cli::run(config, options);
  if (result.exit_code != 0) return fail(result.exit_code, result.reason, result.message);
  try {
    cli::write_atomic(out_path, result.csv);
  } catch (const Error& e) {
    return fail(1, to_string(e.kind()), e.what());
  }
  return 0;
}
