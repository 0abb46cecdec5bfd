#pragma once

#include "qmc/bench.hpp"
#include "qmc/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qmc {

// Fully validated CLI inputs; every numeric field is range-checked during
// parsing, before any computation starts.
struct RunConfig {
  std::string command; // price | converge | bench | verify
  OptionSpec spec{100.0, 100.0, 0.05, 0.2, 1.0, OptionKind::Call};
  Method method = Method::ClosedForm;
  Index m = 10;
  std::vector<Index> m_list = {1, 2, 5, 10, 20, 50};
  Index n_paths = Index{1} << 18;
  std::vector<Index> path_list = {10000, 100000, 1000000};
  std::uint64_t seed = 42;
  int lanes = 0; // 0 = hardware thread count, resolved after parsing
  std::vector<int> thread_list = {1, 2, 4};
  Index chunk = 4096;
  bool serial = false;
  OutputFormat format = OutputFormat::Table;
  std::string out_path; // empty = stdout
};

// Thrown by parse_args for --help and for every parse/validation failure;
// main prints `message` and exits with `code`.
struct CliExit {
  int code = 0;
  std::string message;
};

// Parses argv (without the program name). Unknown flags are rejected;
// errors name the offending flag and its valid range.
RunConfig parse_args(const std::vector<std::string>& args);

// Executes the parsed command. Returns 0 iff all requested work succeeded.
int run_cli(const RunConfig& config);

} // namespace qmc
