#include "qmc/analytic.hpp"

#include "support/oracle_utils.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

using qmc::OptionKind;
using qmc::OptionSpec;

namespace {

OptionSpec reference_call() { return {100.0, 100.0, 0.05, 0.2, 1.0, OptionKind::Call}; }

} // namespace

TEST_SUITE("analytic") {

TEST_CASE("cnd at zero is exactly one half") {
  CHECK(qmc::cnd(0.0) == 0.5);
}

TEST_CASE("cnd symmetry holds to 1e-12 over |d| <= 8") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-8.0, 8.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = d(rng);
    CHECK(std::abs(qmc::cnd(-x) + qmc::cnd(x) - 1.0) <= 1e-12);
  }
}

TEST_CASE("cnd matches the quadrature oracle") {
  const double oracle = testutil::normal_cdf_quadrature(1.959964);
  CHECK(std::abs(oracle - 0.975000) < 1e-6); // frozen reference value
  CHECK(std::abs(qmc::cnd(1.959964) - oracle) < 1e-6);
  for (double x = -6.0; x <= 6.0; x += 0.17) {
    CHECK(std::abs(qmc::cnd(x) - testutil::normal_cdf_quadrature(x)) < 1e-7);
  }
}

TEST_CASE("cnd is monotone non-decreasing") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  double prev_x = -11.0;
  double prev_v = 0.0;
  std::vector<double> grid(4000);
  for (auto& g : grid) g = d(rng);
  std::sort(grid.begin(), grid.end());
  for (const double x : grid) {
    const double v = qmc::cnd(x);
    if (prev_x > -11.0) CHECK(v >= prev_v);
    prev_x = x;
    prev_v = v;
  }
}

TEST_CASE("cnd rejects non-finite input") {
  CHECK_THROWS_AS(qmc::cnd(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  CHECK_THROWS_AS(qmc::cnd(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("moro_inv_cnd maps the median to zero") {
  CHECK(qmc::moro_inv_cnd(0.5) == 0.0);
}

TEST_CASE("moro_inv_cnd roundtrips through cnd") {
  for (const double u : {0.01, 0.1, 0.25, 0.75, 0.9, 0.99}) {
    CHECK(std::abs(qmc::cnd(qmc::moro_inv_cnd(u)) - u) < 1e-6);
  }
  // 1000-point functional-inverse grid.
  for (int i = 0; i < 1000; ++i) {
    const double u = 0.001 + (0.998 * i) / 999.0;
    CHECK(std::abs(qmc::cnd(qmc::moro_inv_cnd(u)) - u) < 1e-6);
  }
}

TEST_CASE("moro_inv_cnd matches the bisection oracle at 0.975") {
  const double z = testutil::normal_inverse_bisection(0.975);
  CHECK(std::abs(z - 1.959964) < 1e-5); // oracle sanity
  CHECK(std::abs(qmc::moro_inv_cnd(0.975) - z) < 1e-4);
  CHECK(qmc::moro_inv_cnd(0.975) == doctest::Approx(1.95996).epsilon(1e-4));
}

TEST_CASE("moro_inv_cnd is strictly increasing and antisymmetric") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u01(1e-6, 1.0 - 1e-6);
  std::vector<double> grid(3000);
  for (auto& g : grid) g = u01(rng);
  std::sort(grid.begin(), grid.end());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] - grid[i - 1] < 1e-9) continue;
    CHECK(qmc::moro_inv_cnd(grid[i]) > qmc::moro_inv_cnd(grid[i - 1]));
  }
  for (const double u : {0.001, 0.05, 0.2, 0.42, 0.49, 0.07999, 0.92001}) {
    CHECK(std::abs(qmc::moro_inv_cnd(1.0 - u) + qmc::moro_inv_cnd(u)) < 1e-9);
  }
}

TEST_CASE("moro_inv_cnd rejects the closed endpoints") {
  CHECK_THROWS_AS(qmc::moro_inv_cnd(0.0), std::invalid_argument);
  CHECK_THROWS_AS(qmc::moro_inv_cnd(1.0), std::invalid_argument);
  CHECK_THROWS_AS(qmc::moro_inv_cnd(-0.25), std::invalid_argument);
  CHECK_THROWS_AS(qmc::moro_inv_cnd(1.25), std::invalid_argument);
}

TEST_CASE("bs_price matches the lognormal quadrature oracle") {
  const double oracle =
      testutil::lognormal_call_quadrature(100.0, 100.0, 0.05, 0.2, 1.0);
  CHECK(oracle == doctest::Approx(10.4506).epsilon(5e-5)); // frozen reference
  CHECK(std::abs(qmc::bs_price(reference_call()) - oracle) < 5e-4);

  // Put via parity applied to the call oracle.
  OptionSpec put = reference_call();
  put.kind = OptionKind::Put;
  const double put_oracle = oracle - 100.0 + 100.0 * std::exp(-0.05);
  CHECK(put_oracle == doctest::Approx(5.5735).epsilon(5e-5));
  CHECK(std::abs(qmc::bs_price(put) - put_oracle) < 5e-4);
}

TEST_CASE("bs_price degenerate branches") {
  // Zero-volatility zero-rate call collapses to intrinsic value.
  CHECK(qmc::bs_price({110.0, 100.0, 0.0, 0.0, 1.0, OptionKind::Call}) ==
        doctest::Approx(10.0).epsilon(1e-12));
  // Tiny volatility approaches the same limit.
  CHECK(qmc::bs_price({110.0, 100.0, 0.0, 1e-9, 1.0, OptionKind::Call}) ==
        doctest::Approx(10.0).epsilon(1e-9));
  // Zero maturity is intrinsic.
  CHECK(qmc::bs_price({90.0, 100.0, 0.05, 0.2, 0.0, OptionKind::Put}) == 10.0);
  // Zero volatility with a rate: discounted deterministic forward payoff.
  const double expected = std::exp(-0.05) * (100.0 * std::exp(0.05) - 90.0);
  CHECK(qmc::bs_price({100.0, 90.0, 0.05, 0.0, 1.0, OptionKind::Call}) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("bs_price rejects invalid specs") {
  CHECK_THROWS_AS(qmc::bs_price({-1.0, 100.0, 0.0, 0.2, 1.0, OptionKind::Call}),
                  std::invalid_argument);
  CHECK_THROWS_AS(qmc::bs_price({100.0, 0.0, 0.0, 0.2, 1.0, OptionKind::Call}),
                  std::invalid_argument);
  CHECK_THROWS_AS(qmc::bs_price({100.0, 100.0, 0.0, -0.2, 1.0, OptionKind::Call}),
                  std::invalid_argument);
  CHECK_THROWS_AS(qmc::bs_price({100.0, 100.0, 0.0, 0.2, -1.0, OptionKind::Call}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      qmc::bs_price({std::numeric_limits<double>::quiet_NaN(), 100.0, 0.0, 0.2, 1.0,
                     OptionKind::Call}),
      std::invalid_argument);
}

TEST_CASE("put-call parity holds to 1e-10 relative on a random grid") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> spot(50.0, 150.0), strike(50.0, 150.0),
      rate(0.0, 0.1), vol(0.05, 0.5), mat(0.1, 3.0);
  for (int i = 0; i < 1000; ++i) {
    OptionSpec spec{spot(rng), strike(rng), rate(rng), vol(rng), mat(rng),
                    OptionKind::Call};
    const double call = qmc::bs_price(spec);
    spec.kind = OptionKind::Put;
    const double put = qmc::bs_price(spec);
    const double forward =
        spec.spot - spec.strike * std::exp(-spec.rate * spec.maturity);
    CHECK(std::abs(call - put - forward) <=
          1e-10 * std::max(1.0, spec.spot + spec.strike));
  }
}

TEST_CASE("bs_price call monotonicity and European lower bound") {
  std::mt19937_64 rng(211);
  std::uniform_real_distribution<double> spot(50.0, 150.0), strike(50.0, 150.0),
      rate(0.0, 0.1), vol(0.05, 0.5), mat(0.1, 3.0), bump(1.0, 20.0);
  for (int i = 0; i < 400; ++i) {
    const OptionSpec spec{spot(rng), strike(rng), rate(rng), vol(rng), mat(rng),
                          OptionKind::Call};
    const double base = qmc::bs_price(spec);

    OptionSpec up_spot = spec;
    up_spot.spot += bump(rng);
    CHECK(qmc::bs_price(up_spot) >= base - 1e-12);

    OptionSpec up_vol = spec;
    up_vol.volatility += 0.1;
    CHECK(qmc::bs_price(up_vol) >= base - 1e-12);

    OptionSpec up_strike = spec;
    up_strike.strike += bump(rng);
    CHECK(qmc::bs_price(up_strike) <= base + 1e-12);

    const double lower_bound = std::max(
        spec.spot - spec.strike * std::exp(-spec.rate * spec.maturity), 0.0);
    CHECK(base >= lower_bound - 1e-12);
  }
}

} // TEST_SUITE
