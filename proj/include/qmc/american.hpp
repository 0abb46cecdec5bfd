#pragma once

#include "qmc/path_engine.hpp"
#include "qmc/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qmc {

// Record of one backward sweep along a single path.
struct SweepTrace {
  // Option value at t_0, t_1, ..., t_m, then the realized payoff at T
  // (the European value at expiry); size m + 2.
  std::vector<double> values;
  // Earliest point index in 0..m where intrinsic value beat continuation,
  // i.e. where the holder with foresight would exercise. Empty if never.
  std::optional<Index> exercise_point;
};

struct ConvergencePoint {
  Index m = 0;
  double price = 0.0;
  double std_error = 0.0;
  double elapsed_s = 0.0;
};
using ConvergenceCurve = std::vector<ConvergencePoint>;

// Foresight backward induction along one simulated call path. The last
// exercise point compares intrinsic value against the Black-Scholes value of
// the final interval of width dt; every earlier point compares intrinsic
// against the discounted value carried from the next point; one more
// comparison at t_0 allows immediate exercise. Intrinsic values are floored
// at zero. `path` holds the prices at t_1..t_m, T (schedule.points() entries).
SweepTrace backward_sweep(Eigen::Ref<const RowVector> path, const OptionSpec& spec,
                          const ExerciseSchedule& schedule);

// The t_0 value of the same recursion, without building a trace.
double sweep_value(Eigen::Ref<const RowVector> path, const OptionSpec& spec,
                   const ExerciseSchedule& schedule);

// Foresight (upper bound) estimate of the American call value: simulates a
// PathBatch over the m-point schedule, sweeps each path and averages the t_0
// values with the pairwise reduction. Calls only; puts are rejected.
PricingResult price_american(const OptionSpec& spec, Index m, Index n_paths,
                             std::uint64_t seed, const ExecPolicy& exec = {});

// One price_american row per requested m, sorted by m ascending.
ConvergenceCurve convergence_curve(const OptionSpec& spec,
                                   const std::vector<Index>& m_values,
                                   Index n_paths, std::uint64_t seed,
                                   const ExecPolicy& exec = {});

} // namespace qmc
