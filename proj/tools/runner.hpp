#pragma once

// Experiment runner behind the `vnerg` command: config grammar, dispatch to
// the library, CSV emission.
//
// Config grammar (one directive per line, `#` starts a comment):
//
//   kind <classify|ergodic|semigroup|group|folner-audit|duality>
//   dim <n>
//   seed <integer>
//   trials <integer>
//   n_list <values>          integers; `a..b` expands to a, a+1, ..., b
//   lambda_list <values>     positive reals
//   group <Zd <d>|heisenberg3|cyclic <N>>
//   folner <boxes|intervals>
//   tol_psd <x>  tol_eq <x>  tol_null <x>
//   begin matrix <role>      role: kraus superop state hamiltonian jump unitary psi
//   <row entries>            entries are a, bi or a+bi
//   end matrix
//   begin map                duality only; holds kraus/superop blocks of one map
//   end map

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vnerg/amenable.hpp"
#include "vnerg/linalg.hpp"

namespace vnerg::cli {

enum class Kind { Classify, Ergodic, Semigroup, Group, FolnerAudit, Duality };

std::string_view to_string(Kind kind);
std::optional<Kind> kind_from_string(std::string_view name);

struct MapSpec {
  std::vector<Matrix> kraus;
  std::optional<Matrix> superop;

  friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

struct GroupSpec {
  std::string name;  // Zd, heisenberg3, cyclic
  long parameter = 0;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct ExperimentConfig {
  std::optional<Kind> kind;
  std::optional<long> dim;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::vector<long> n_list;
  std::vector<double> lambda_list;
  std::optional<GroupSpec> group;
  std::optional<std::string> folner;
  std::optional<double> tol_psd;
  std::optional<double> tol_eq;
  std::optional<double> tol_null;

  MapSpec map;                // classify, ergodic
  std::vector<MapSpec> maps;  // duality
  std::optional<Matrix> state;
  std::optional<Matrix> hamiltonian;
  std::vector<Matrix> jumps;
  std::vector<Matrix> unitaries;
  std::vector<Matrix> psi;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws Error(ParseError) with the offending line number.
ExperimentConfig parse_problem(const std::string& text);
// Canonical text form; parse_problem(emit(c)) == c.
std::string emit(const ExperimentConfig& config);

Complex parse_complex(std::string_view token);
std::string format_complex(Complex z);
std::string format_double(double x);

struct RunOptions {
  std::size_t max_set_size = kDefaultMaxSetSize;
};

struct RunResult {
  int exit_code = 0;
  std::string csv;     // empty unless exit_code == 0
  std::string reason;  // ErrorKind name on failure
  std::string message;
};

// Never throws; maps errors to exit codes (2 hypothesis failure, 1 otherwise).
RunResult run(const ExperimentConfig& config, const RunOptions& options = {});

// Writes via a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace vnerg::cli
