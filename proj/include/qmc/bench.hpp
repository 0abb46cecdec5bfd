#pragma once

#include "qmc/american.hpp"
#include "qmc/path_engine.hpp"
#include "qmc/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmc {

// One row of the scaling experiment. lanes == 0 marks the straight-line
// serial runner; lanes >= 1 the chunked engine at that lane count. Prices for
// identical (method, n_paths, seed) are identical no matter how they were run.
struct BenchmarkRecord {
  Method method = Method::EuropeanMC;
  Index n_paths = 0;
  Index m = 0;
  int lanes = 1;
  Index chunk = 4096;
  std::uint64_t seed = 0;
  double price = 0.0;
  double std_error = 0.0;
  double elapsed_s = 0.0;
};

inline constexpr const char* kCsvHeader =
    "method,n_paths,m,lanes,chunk,seed,price,std_error,elapsed_s";

enum class OutputFormat { Table, Csv, Json };

struct BenchmarkReport {
  std::vector<BenchmarkRecord> records;
  std::vector<std::string> errors; // one message per failed configuration
};

// Cartesian product of path_counts x lane_counts, each configuration timed
// with a monotonic clock around the pricing call only: one untimed warm-up,
// then the median of 3 timed repetitions. include_serial adds a lanes == 0
// straight-line baseline per path count. Individual failures are recorded in
// `errors` and do not abort the sweep.
BenchmarkReport run_benchmark(const OptionSpec& spec, Method method, Index m,
                              const std::vector<Index>& path_counts,
                              const std::vector<int>& lane_counts,
                              std::uint64_t seed, Index chunk,
                              bool include_serial);

// Single-threaded straight-line loop over paths (no chunk machinery). Uses
// the same sample stream, per-path arithmetic and pairwise reduction as the
// engine, so the price is bit-identical to the parallel result.
PricingResult serial_price(const OptionSpec& spec, Method method, Index m,
                           Index n_paths, std::uint64_t seed);

BenchmarkRecord to_record(const PricingResult& result, Index m, int lanes,
                          Index chunk);
std::vector<BenchmarkRecord> to_records(const ConvergenceCurve& curve,
                                        Index n_paths, int lanes, Index chunk,
                                        std::uint64_t seed);

// CSV: fixed header, floats at 17 significant digits (lossless round-trip).
// JSON: array of flat objects with the same field names.
void emit_records(const std::vector<BenchmarkRecord>& records,
                  OutputFormat format, std::ostream& os);

// Writes to `out_path`, or stdout when it is empty or "-". Throws with the
// path named if the file cannot be opened.
void emit_results(const std::vector<BenchmarkRecord>& records,
                  OutputFormat format, const std::string& out_path);

std::vector<BenchmarkRecord> parse_csv_records(std::istream& in);

} // namespace qmc
