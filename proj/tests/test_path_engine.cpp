#include "qmc/path_engine.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

using qmc::ExecPolicy;
using qmc::Index;
using qmc::OptionKind;
using qmc::OptionSpec;
using qmc::Vector;

namespace {

bool bit_identical(const Vector& a, const Vector& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

bool bit_identical(const qmc::Matrix& a, const qmc::Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

} // namespace

TEST_SUITE("path_engine") {

TEST_CASE("make_schedule lays out the Bermudan grid") {
  const auto schedule = qmc::make_schedule(4, 1.0);
  CHECK(schedule.dt == 1.0 / 5.0);
  REQUIRE(schedule.times.size() == 5);
  CHECK(schedule.times[0] == schedule.dt);
  CHECK(schedule.times[3] == 4.0 * schedule.dt);
  CHECK(schedule.times.back() == 1.0);
  for (std::size_t i = 1; i < schedule.times.size(); ++i) {
    CHECK(schedule.times[i] > schedule.times[i - 1]);
  }
  CHECK_THROWS_AS(qmc::make_schedule(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(qmc::make_schedule(3, 0.0), std::invalid_argument);
}

TEST_CASE("gbm_step closed-form values") {
  CHECK(qmc::gbm_step(100.0, 1.0, 0.0, 0.0, 0.0) == 100.0);
  CHECK(std::abs(qmc::gbm_step(100.0, 1.0, 0.0, 0.05, 0.0) - 105.1271) < 1e-4);
  // Direct evaluation of the exponent as the oracle.
  const double oracle = 100.0 * std::exp((0.05 - 0.5 * 0.2 * 0.2) * 0.25 +
                                         0.2 * std::sqrt(0.25) * 1.0);
  CHECK(std::abs(oracle - 111.3491) < 1e-3); // frozen from the oracle
  CHECK(qmc::gbm_step(100.0, 0.25, 1.0, 0.05, 0.2) == oracle);

  CHECK_THROWS_AS(qmc::gbm_step(0.0, 1.0, 0.0, 0.0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(qmc::gbm_step(100.0, 0.0, 0.0, 0.0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(qmc::gbm_step(100.0, 1.0, 0.0, 0.0, -0.2), std::invalid_argument);
}

TEST_CASE("simulate_batch with zero volatility is the deterministic forward") {
  const OptionSpec spec{100.0, 100.0, 0.05, 0.0, 1.0, OptionKind::Call};
  const auto schedule = qmc::make_schedule(1, 1.0);
  const auto batch = qmc::simulate_batch(spec, schedule, 1, 7, ExecPolicy{1, 16});
  REQUIRE(batch.prices.rows() == 1);
  REQUIRE(batch.prices.cols() == 2);
  CHECK(batch.prices(0, 0) == doctest::Approx(100.0 * std::exp(0.05 * 0.5)).epsilon(1e-12));
  CHECK(batch.prices(0, 1) == doctest::Approx(100.0 * std::exp(0.05)).epsilon(1e-12));
}

TEST_CASE("simulate_batch is bit-identical across lanes and chunks") {
  const OptionSpec spec{100.0, 95.0, 0.03, 0.25, 2.0, OptionKind::Call};
  const auto schedule = qmc::make_schedule(5, 2.0);
  const auto base = qmc::simulate_batch(spec, schedule, 20000, 42, ExecPolicy{1, 4096});
  const auto lanes8 = qmc::simulate_batch(spec, schedule, 20000, 42, ExecPolicy{8, 4096});
  const auto chunky = qmc::simulate_batch(spec, schedule, 20000, 42, ExecPolicy{3, 777});
  CHECK(bit_identical(base.prices, lanes8.prices));
  CHECK(bit_identical(base.prices, chunky.prices));
  CHECK(base.prices.minCoeff() > 0.0);
}

TEST_CASE("simulate_terminal martingale at moderate size") {
  const OptionSpec spec{100.0, 100.0, 0.05, 0.2, 1.0, OptionKind::Call};
  const Index n = Index{1} << 16;
  const Vector terminal = qmc::simulate_terminal(spec, n, 42, ExecPolicy{2, 4096});
  const double disc = std::exp(-0.05);
  Vector discounted = disc * terminal;
  const auto stats = qmc::reduce_stats(discounted, 1);
  CHECK(std::abs(stats.mean - 100.0) < 3.0 * stats.std_error);
}

TEST_CASE("simulate_batch refuses absurd allocations with the computed size") {
  const OptionSpec spec{100.0, 100.0, 0.05, 0.2, 1.0, OptionKind::Call};
  const auto schedule = qmc::make_schedule(1000, 1.0);
  try {
    qmc::simulate_batch(spec, schedule, Index{1} << 40, 1, ExecPolicy{});
    FAIL("expected std::length_error");
  } catch (const std::length_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bytes") != std::string::npos);
    CHECK(msg.find("1001") != std::string::npos);
  }
}

TEST_CASE("tree_reduce basics") {
  CHECK(qmc::tree_reduce(std::vector<double>{3.25}) == 3.25);
  CHECK(qmc::tree_reduce(std::vector<double>{1.0, 2.0, 3.0, 4.0}) == 10.0);
  CHECK_THROWS_AS(qmc::tree_reduce(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("tree_reduce is bit-identical across lane counts") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> values(1'000'000);
  for (auto& v : values) v = u(rng);
  const double lanes1 = qmc::tree_reduce(values, 1);
  const double lanes16 = qmc::tree_reduce(values, 16);
  CHECK(std::memcmp(&lanes1, &lanes16, sizeof lanes1) == 0);
}

TEST_CASE("pairwise summation beats sequential accumulation") {
  const std::size_t n = 10'000'000;
  std::vector<double> values(n, 0.1);
  const double pairwise = qmc::tree_reduce(values, 2);
  double sequential = 0.0;
  for (const double v : values) sequential += v;
  const double exact = 1e6;
  CHECK(std::abs(pairwise - exact) < std::abs(sequential - exact));
  CHECK(std::abs(pairwise - exact) < 1e-5);
}

TEST_CASE("parallel_for_chunks covers the range once and propagates errors") {
  std::vector<std::atomic<int>> hits(1000);
  qmc::parallel_for_chunks(1000, ExecPolicy{4, 64}, [&](Index b, Index e) {
    for (Index i = b; i < e; ++i) hits[static_cast<std::size_t>(i)]++;
  });
  for (const auto& h : hits) CHECK(h.load() == 1);

  CHECK_THROWS_AS(
      qmc::parallel_for_chunks(100, ExecPolicy{2, 8},
                               [](Index b, Index) {
                                 if (b >= 32) throw std::runtime_error("boom");
                               }),
      std::runtime_error);
}

} // TEST_SUITE
