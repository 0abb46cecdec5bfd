#include "qmc/oracles.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qmc::oracle {

namespace {

double payoff_of(OptionKind kind, double s, double strike) {
  return intrinsic_value(kind, s, strike);
}

// Deterministic lattice: with zero volatility the tree collapses onto the
// forward path, and the early-exercise max runs over the grid times.
double degenerate_price(const TreeConfig& config, bool american) {
  const OptionSpec& spec = config.spec;
  if (spec.maturity == 0.0) return payoff_of(spec.kind, spec.spot, spec.strike);
  const double dt = spec.maturity / static_cast<double>(config.steps);
  const Index first = american ? 0 : config.steps;
  double best = 0.0;
  for (Index k = first; k <= config.steps; ++k) {
    const double t = dt * static_cast<double>(k);
    const double s = spec.spot * std::exp(spec.rate * t);
    const double value = std::exp(-spec.rate * t) * payoff_of(spec.kind, s, spec.strike);
    if (value > best) best = value;
  }
  return best;
}

struct SimpsonState {
  double worst_interval_error = 0.0;
  bool depth_exhausted = false;
};

double simpson_rule(double fa, double fm, double fb, double h) {
  return (h / 6.0) * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol,
                     int depth, SimpsonState& state) {
  const double mid = 0.5 * (a + b);
  const double lm = 0.5 * (a + mid);
  const double rm = 0.5 * (mid + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(fa, flm, fm, mid - a);
  const double right = simpson_rule(fm, frm, fb, b - mid);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    state.depth_exhausted = true;
    if (std::abs(delta) > state.worst_interval_error) {
      state.worst_interval_error = std::abs(delta);
    }
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1, state) +
         adaptive_step(f, mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1, state);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (!(tol > 0.0)) throw std::invalid_argument("adaptive_simpson: tol must be > 0");
  if (a == b) return 0.0;
  SimpsonState state;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson_rule(fa, fm, fb, b - a);
  const double result =
      adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth, state);
  if (state.depth_exhausted) {
    std::ostringstream msg;
    msg << "adaptive_simpson: requested tolerance " << tol
        << " not reached; achieved about " << state.worst_interval_error
        << " on the worst interval";
    throw std::runtime_error(msg.str());
  }
  return result;
}

double discounted_expectation(const OptionSpec& spec,
                              const std::function<double(double)>& payoff,
                              double tol) {
  validate(spec);
  if (!(spec.maturity > 0.0)) {
    throw std::invalid_argument("discounted_expectation: maturity must be > 0");
  }
  if (!(spec.volatility > 0.0)) {
    throw std::invalid_argument("discounted_expectation: volatility must be > 0");
  }
  const double mu = (spec.rate - 0.5 * spec.volatility * spec.volatility) * spec.maturity;
  const double sigma = spec.volatility * std::sqrt(spec.maturity);
  const double disc = std::exp(-spec.rate * spec.maturity);
  const double inv_sqrt_2pi = 0.3989422804014327;
  const auto integrand = [&](double z) {
    const double s_t = spec.spot * std::exp(mu + sigma * z);
    return disc * payoff(s_t) * inv_sqrt_2pi * std::exp(-0.5 * z * z);
  };
  return adaptive_simpson(integrand, -10.0, 10.0, tol);
}

double bs_quadrature(const OptionSpec& spec) {
  validate(spec);
  if (!(spec.maturity > 0.0)) {
    throw std::invalid_argument("bs_quadrature: maturity must be > 0");
  }
  if (!(spec.volatility > 0.0)) {
    throw std::invalid_argument("bs_quadrature: volatility must be > 0");
  }
  const double mu = (spec.rate - 0.5 * spec.volatility * spec.volatility) * spec.maturity;
  const double sigma = spec.volatility * std::sqrt(spec.maturity);
  const double disc = std::exp(-spec.rate * spec.maturity);
  const double inv_sqrt_2pi = 0.3989422804014327;
  // z where S_T crosses the strike; the payoff is smooth on either side.
  const double z_kink = (std::log(spec.strike / spec.spot) - mu) / sigma;
  double lo = -10.0;
  double hi = 10.0;
  if (spec.kind == OptionKind::Call) {
    if (z_kink >= hi) return 0.0;
    lo = std::max(lo, z_kink);
  } else {
    if (z_kink <= lo) return 0.0;
    hi = std::min(hi, z_kink);
  }
  const double strike = spec.strike;
  const OptionKind kind = spec.kind;
  const auto integrand = [&](double z) {
    const double s_t = spec.spot * std::exp(mu + sigma * z);
    return disc * payoff_of(kind, s_t, strike) * inv_sqrt_2pi * std::exp(-0.5 * z * z);
  };
  return adaptive_simpson(integrand, lo, hi, 1e-9);
}

double crr_price(const TreeConfig& config, bool american) {
  validate(config.spec);
  if (config.steps < 1) throw std::invalid_argument("crr_price: steps must be >= 1");
  const OptionSpec& spec = config.spec;
  if (spec.volatility == 0.0 || spec.maturity == 0.0) {
    return degenerate_price(config, american);
  }

  const Index steps = config.steps;
  const double dt = spec.maturity / static_cast<double>(steps);
  const double up = std::exp(spec.volatility * std::sqrt(dt));
  const double down = 1.0 / up;
  const double growth = std::exp(spec.rate * dt);
  const double disc = std::exp(-spec.rate * dt);
  const double p_up = (growth - down) / (up - down);
  if (!(p_up >= 0.0) || !(p_up <= 1.0)) {
    std::ostringstream msg;
    msg << "crr_price: risk-neutral probability " << p_up
        << " outside [0,1] (steps=" << steps << ", rate=" << spec.rate
        << ", volatility=" << spec.volatility << ", maturity=" << spec.maturity
        << "); increase steps";
    throw std::invalid_argument(msg.str());
  }
  const double p_down = 1.0 - p_up;

  // spot * up^(2j - level) indexed by exponent; one pow per exponent.
  std::vector<double> up_pow(static_cast<std::size_t>(2 * steps) + 1);
  for (Index e = -steps; e <= steps; ++e) {
    up_pow[static_cast<std::size_t>(e + steps)] = std::pow(up, static_cast<double>(e));
  }
  const auto node_price = [&](Index level, Index j) {
    return spec.spot * up_pow[static_cast<std::size_t>(2 * j - level + steps)];
  };

  std::vector<double> values(static_cast<std::size_t>(steps) + 1);
  for (Index j = 0; j <= steps; ++j) {
    values[static_cast<std::size_t>(j)] =
        payoff_of(spec.kind, node_price(steps, j), spec.strike);
  }
  for (Index level = steps - 1; level >= 0; --level) {
    for (Index j = 0; j <= level; ++j) {
      double v = disc * (p_up * values[static_cast<std::size_t>(j) + 1] +
                         p_down * values[static_cast<std::size_t>(j)]);
      if (american) {
        const double exercise = payoff_of(spec.kind, node_price(level, j), spec.strike);
        if (exercise > v) v = exercise;
      }
      values[static_cast<std::size_t>(j)] = v;
    }
  }
  return values[0];
}

} // namespace qmc::oracle
