#pragma once

#include "qmc/types.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qmc {

// Bermudan exercise grid: m early-exercise points at i*dt with dt = T/(m+1),
// plus the expiry T itself as the final stored point.
struct ExerciseSchedule {
  Index m = 0;          // number of early-exercise points, >= 1
  double maturity = 0.0;
  double dt = 0.0;      // T/(m+1), as computed in 64-bit arithmetic
  std::vector<double> times; // t_1..t_m, then T; size m+1

  Index points() const { return m + 1; }
};

ExerciseSchedule make_schedule(Index m, double maturity);

struct PathBatch {
  Matrix prices; // [n_paths x schedule.points()], all entries > 0
  OptionSpec spec;
  ExerciseSchedule schedule;
  std::uint64_t seed = 0;
};

// Execution hints. Lanes and chunk size can never change numeric results:
// work is split at fixed chunk boundaries and every output slot is a pure
// function of its indices.
struct ExecPolicy {
  int lanes = 1;
  Index chunk = 4096;
};

// Number of hardware threads (at least 1).
int default_lanes();

// Runs body(begin, end) over consecutive [begin, end) chunk ranges of
// [0, total). With lanes > 1 the chunks are claimed by a small worker pool;
// chunk boundaries depend only on `exec.chunk`.
void parallel_for_chunks(Index total, const ExecPolicy& exec,
                         const std::function<void(Index, Index)>& body);

// One discretized GBM step: s * exp((r - v^2/2) dt + v sqrt(dt) z).
inline double gbm_step(double s_prev, double dt, double z, double rate, double vol) {
  if (!(s_prev > 0.0)) throw std::invalid_argument("gbm_step: s_prev must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("gbm_step: dt must be > 0");
  if (!(vol >= 0.0)) throw std::invalid_argument("gbm_step: vol must be >= 0");
  return s_prev * std::exp((rate - 0.5 * vol * vol) * dt + vol * std::sqrt(dt) * z);
}

// Simulates n_paths GBM paths over the schedule, one normal draw per
// (path, schedule point) from the scrambled quasi stream. Bit-identical
// results for any lane count or chunk size.
PathBatch simulate_batch(const OptionSpec& spec, const ExerciseSchedule& schedule,
                         Index n_paths, std::uint64_t seed,
                         const ExecPolicy& exec = {});

// Terminal-only simulation: a single GBM step of width T per path
// (maturity == 0 degenerates to S0 on every path).
Vector simulate_terminal(const OptionSpec& spec, Index n_paths,
                         std::uint64_t seed, const ExecPolicy& exec = {});

// Fixed-shape pairwise (binary tree) summation: ranges are halved down to a
// 64-element sequential base case. The addition tree depends only on n, so
// the result is bit-identical for any lane count.
double tree_reduce(const double* values, Index n, int lanes = 1);
double tree_reduce(const std::vector<double>& values, int lanes = 1);
double tree_reduce(const Vector& values, int lanes = 1);

// Pairwise mean and Bessel-corrected standard error of per-path values.
struct ReduceStats {
  double mean = 0.0;
  double std_error = 0.0;
};
ReduceStats reduce_stats(const Vector& values, int lanes = 1);

} // namespace qmc
