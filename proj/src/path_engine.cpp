#include "qmc/path_engine.hpp"

#include "qmc/analytic.hpp"
#include "qmc/quasi_rng.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace qmc {

namespace {

// Batches are capped well below addressable memory so a bad request fails
// with the computed requirement instead of an opaque bad_alloc.
constexpr unsigned __int128 kMaxBatchBytes =
    static_cast<unsigned __int128>(1) << 37; // 128 GiB

void check_capacity(Index n_paths, Index points, const char* who) {
  const unsigned __int128 bytes = static_cast<unsigned __int128>(n_paths) *
                                  static_cast<unsigned __int128>(points) *
                                  sizeof(double);
  if (bytes > kMaxBatchBytes) {
    std::ostringstream msg;
    msg << who << ": requested " << n_paths << " paths x " << points
        << " points = " << static_cast<double>(bytes)
        << " bytes, above the supported maximum of "
        << static_cast<double>(kMaxBatchBytes) << " bytes";
    throw std::length_error(msg.str());
  }
}

constexpr Index kPairwiseBase = 64;

double pairwise_sum(const double* p, Index n) {
  if (n <= kPairwiseBase) {
    double s = 0.0;
    for (Index i = 0; i < n; ++i) s += p[i];
    return s;
  }
  const Index half = n / 2;
  return pairwise_sum(p, half) + pairwise_sum(p + half, n - half);
}

// Same halving boundaries as pairwise_sum; lanes only decide which subtree a
// thread evaluates, so the addition tree (and the result) never changes.
double pairwise_sum_parallel(const double* p, Index n, int lanes) {
  if (lanes <= 1 || n <= (Index{1} << 15)) return pairwise_sum(p, n);
  const Index half = n / 2;
  double left = 0.0;
  std::thread worker([&] { left = pairwise_sum_parallel(p, half, lanes / 2); });
  const double right = pairwise_sum_parallel(p + half, n - half, lanes - lanes / 2);
  worker.join();
  return left + right;
}

} // namespace

ExerciseSchedule make_schedule(Index m, double maturity) {
  if (m < 1) throw std::invalid_argument("make_schedule: m must be >= 1");
  if (!(maturity > 0.0)) throw std::invalid_argument("make_schedule: maturity must be > 0");
  ExerciseSchedule schedule;
  schedule.m = m;
  schedule.maturity = maturity;
  schedule.dt = maturity / static_cast<double>(m + 1);
  schedule.times.resize(static_cast<std::size_t>(m) + 1);
  for (Index i = 0; i < m; ++i) {
    schedule.times[static_cast<std::size_t>(i)] = static_cast<double>(i + 1) * schedule.dt;
  }
  schedule.times.back() = maturity;
  return schedule;
}

int default_lanes() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_chunks(Index total, const ExecPolicy& exec,
                         const std::function<void(Index, Index)>& body) {
  if (total <= 0) return;
  if (exec.lanes < 1) throw std::invalid_argument("parallel_for_chunks: lanes must be >= 1");
  if (exec.chunk < 1) throw std::invalid_argument("parallel_for_chunks: chunk must be >= 1");
  const Index n_chunks = (total + exec.chunk - 1) / exec.chunk;
  const auto run_chunk = [&](Index c) {
    const Index begin = c * exec.chunk;
    const Index end = std::min(total, begin + exec.chunk);
    body(begin, end);
  };
  if (exec.lanes == 1 || n_chunks == 1) {
    for (Index c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<Index> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const int workers = static_cast<int>(
      std::min<Index>(static_cast<Index>(exec.lanes), n_chunks));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const Index c = next.fetch_add(1);
        if (c >= n_chunks) return;
        try {
          run_chunk(c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

PathBatch simulate_batch(const OptionSpec& spec, const ExerciseSchedule& schedule,
                         Index n_paths, std::uint64_t seed, const ExecPolicy& exec) {
  validate(spec);
  if (n_paths < 1) throw std::invalid_argument("simulate_batch: n_paths must be >= 1");
  if (schedule.m < 1 || schedule.times.size() != static_cast<std::size_t>(schedule.m) + 1) {
    throw std::invalid_argument("simulate_batch: schedule is not initialized");
  }
  if (schedule.maturity != spec.maturity) {
    throw std::invalid_argument("simulate_batch: schedule maturity does not match spec maturity");
  }
  const Index points = schedule.points();
  check_capacity(n_paths, points, "simulate_batch");

  QuasiStream stream(points, n_paths, seed);
  PathBatch batch{Matrix(n_paths, points), spec, schedule, seed};
  const double dt = schedule.dt;
  const double r = spec.rate;
  const double v = spec.volatility;
  parallel_for_chunks(n_paths, exec, [&](Index begin, Index end) {
    for (Index p = begin; p < end; ++p) {
      double s = spec.spot;
      for (Index k = 0; k < points; ++k) {
        s = gbm_step(s, dt, stream.normal_at(p, k), r, v);
        batch.prices(p, k) = s;
      }
    }
  });
  return batch;
}

Vector simulate_terminal(const OptionSpec& spec, Index n_paths,
                         std::uint64_t seed, const ExecPolicy& exec) {
  validate(spec);
  if (n_paths < 1) throw std::invalid_argument("simulate_terminal: n_paths must be >= 1");
  check_capacity(n_paths, 1, "simulate_terminal");
  Vector terminal(n_paths);
  if (spec.maturity == 0.0) {
    terminal.setConstant(spec.spot);
    return terminal;
  }
  QuasiStream stream(1, n_paths, seed);
  parallel_for_chunks(n_paths, exec, [&](Index begin, Index end) {
    for (Index p = begin; p < end; ++p) {
      terminal[p] = gbm_step(spec.spot, spec.maturity, stream.normal_at(p, 0),
                             spec.rate, spec.volatility);
    }
  });
  return terminal;
}

double tree_reduce(const double* values, Index n, int lanes) {
  if (values == nullptr || n < 1) {
    throw std::invalid_argument("tree_reduce: values must be non-empty");
  }
  return pairwise_sum_parallel(values, n, lanes < 1 ? 1 : lanes);
}

double tree_reduce(const std::vector<double>& values, int lanes) {
  if (values.empty()) throw std::invalid_argument("tree_reduce: values must be non-empty");
  return tree_reduce(values.data(), static_cast<Index>(values.size()), lanes);
}

double tree_reduce(const Vector& values, int lanes) {
  if (values.size() < 1) throw std::invalid_argument("tree_reduce: values must be non-empty");
  return tree_reduce(values.data(), values.size(), lanes);
}

ReduceStats reduce_stats(const Vector& values, int lanes) {
  const Index n = values.size();
  const double sum = tree_reduce(values, lanes);
  const double mean = sum / static_cast<double>(n);
  ReduceStats stats{mean, 0.0};
  if (n >= 2) {
    const Vector squares = values.array().square();
    const double sum_sq = tree_reduce(squares, lanes);
    double var = (sum_sq - static_cast<double>(n) * mean * mean) /
                 static_cast<double>(n - 1);
    if (var < 0.0) var = 0.0;
    stats.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return stats;
}

} // namespace qmc
