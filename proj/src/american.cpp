#include "qmc/american.hpp"

#include "qmc/analytic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace qmc {

namespace {

struct NoTrace {
  void terminal(double) {}
  void at(Index, double, bool) {}
};

struct TraceRecorder {
  SweepTrace* trace;
  void terminal(double value) { trace->values.back() = value; }
  void at(Index i, double value, bool took_intrinsic) {
    trace->values[static_cast<std::size_t>(i)] = value;
    // The sweep walks backward, so the last write with the flag set is the
    // earliest exercise point along the path.
    if (took_intrinsic) trace->exercise_point = i;
  }
};

// The foresight recursion over one path. `path` holds schedule.points()
// prices (t_1..t_m, then T).
template <class Recorder>
double sweep_impl(const double* path, const OptionSpec& spec,
                  const ExerciseSchedule& schedule, Recorder rec) {
  const Index m = schedule.m;
  const double strike = spec.strike;
  const double dt = schedule.dt;
  const double disc = std::exp(-spec.rate * dt);

  rec.terminal(intrinsic_value(OptionKind::Call, path[m], strike));

  // Last exercise point: the exercise boundary is the closed-form value of
  // the final interval [t_m, T].
  double value;
  {
    const double s = path[m - 1];
    const double cont = bs_price(
        OptionSpec{s, strike, spec.rate, spec.volatility, dt, OptionKind::Call});
    const double intr = intrinsic_value(OptionKind::Call, s, strike);
    value = intr > cont ? intr : cont;
    rec.at(m, value, intr > cont);
  }
  for (Index i = m - 1; i >= 1; --i) {
    const double s = path[i - 1];
    const double cont = value * disc;
    const double intr = intrinsic_value(OptionKind::Call, s, strike);
    value = intr > cont ? intr : cont;
    rec.at(i, value, intr > cont);
  }
  // Roll back to t_0: the holder may exercise immediately.
  {
    const double cont = value * disc;
    const double intr = intrinsic_value(OptionKind::Call, spec.spot, strike);
    value = intr > cont ? intr : cont;
    rec.at(0, value, intr > cont);
  }
  return value;
}

void check_sweep_inputs(Eigen::Ref<const RowVector> path, const OptionSpec& spec,
                        const ExerciseSchedule& schedule) {
  validate(spec);
  if (spec.kind != OptionKind::Call) {
    throw std::invalid_argument(
        "backward_sweep: not implemented for puts; the foresight algorithm is call-only");
  }
  if (schedule.m < 1 || schedule.times.size() != static_cast<std::size_t>(schedule.m) + 1) {
    throw std::invalid_argument("backward_sweep: schedule is not initialized");
  }
  if (path.size() != schedule.points()) {
    throw std::invalid_argument(
        "backward_sweep: path length does not match the schedule point count");
  }
}

} // namespace

SweepTrace backward_sweep(Eigen::Ref<const RowVector> path, const OptionSpec& spec,
                          const ExerciseSchedule& schedule) {
  check_sweep_inputs(path, spec, schedule);
  SweepTrace trace;
  trace.values.assign(static_cast<std::size_t>(schedule.m) + 2, 0.0);
  sweep_impl(path.data(), spec, schedule, TraceRecorder{&trace});
  return trace;
}

double sweep_value(Eigen::Ref<const RowVector> path, const OptionSpec& spec,
                   const ExerciseSchedule& schedule) {
  check_sweep_inputs(path, spec, schedule);
  return sweep_impl(path.data(), spec, schedule, NoTrace{});
}

PricingResult price_american(const OptionSpec& spec, Index m, Index n_paths,
                             std::uint64_t seed, const ExecPolicy& exec) {
  validate(spec);
  if (spec.kind != OptionKind::Call) {
    throw std::invalid_argument(
        "price_american: not implemented for puts; the foresight algorithm is call-only");
  }
  if (n_paths < 2) {
    throw std::invalid_argument("price_american: n_paths must be >= 2");
  }
  const auto start = std::chrono::steady_clock::now();

  const ExerciseSchedule schedule = make_schedule(m, spec.maturity);
  const PathBatch batch = simulate_batch(spec, schedule, n_paths, seed, exec);
  const Index points = schedule.points();
  Vector values(n_paths);
  parallel_for_chunks(n_paths, exec, [&](Index begin, Index end) {
    for (Index p = begin; p < end; ++p) {
      const double* row = batch.prices.data() + p * points;
      values[p] = sweep_impl(row, spec, schedule, NoTrace{});
    }
  });
  const ReduceStats stats = reduce_stats(values, exec.lanes);

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return PricingResult{stats.mean, stats.std_error, n_paths, elapsed,
                       Method::AmericanUpperBound, seed};
}

ConvergenceCurve convergence_curve(const OptionSpec& spec,
                                   const std::vector<Index>& m_values,
                                   Index n_paths, std::uint64_t seed,
                                   const ExecPolicy& exec) {
  if (m_values.empty()) {
    throw std::invalid_argument("convergence_curve: m_values must be non-empty");
  }
  std::vector<Index> sorted = m_values;
  std::sort(sorted.begin(), sorted.end());
  ConvergenceCurve curve;
  curve.reserve(sorted.size());
  for (const Index m : sorted) {
    const PricingResult result = price_american(spec, m, n_paths, seed, exec);
    curve.push_back(ConvergencePoint{m, result.price, result.std_error,
                                     result.elapsed_s});
  }
  return curve;
}

} // namespace qmc
