#pragma once

#include "qmc/types.hpp"

#include <functional>

// Verification-only machinery. Nothing in here is called by the pricing
// modules, and nothing in here calls into them: crr_price and the quadrature
// evaluate option values from scratch so a pricing bug cannot leak into its
// own oracle.
namespace qmc::oracle {

struct TreeConfig {
  Index steps = 1; // >= 1
  OptionSpec spec;
};

// Cox-Ross-Rubinstein recombining binomial tree: u = exp(v sqrt(dt)),
// d = 1/u, risk-neutral probability (exp(r dt) - d) / (u - d). The american
// flag applies the early-exercise max at every node. Throws when the
// risk-neutral probability falls outside [0, 1].
double crr_price(const TreeConfig& config, bool american);

// Adaptive Simpson on [a, b]; throws with the achieved tolerance if the
// requested one cannot be met within the recursion depth budget.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 48);

// e^{-rT} E[payoff(S_T)] under the exact lognormal terminal law,
// z-transformed and integrated over [-10, 10] standard deviations.
// Requires maturity > 0 and volatility > 0.
double discounted_expectation(const OptionSpec& spec,
                              const std::function<double(double)>& payoff,
                              double tol = 1e-9);

// Quadrature Black-Scholes value (integral split at the payoff kink).
double bs_quadrature(const OptionSpec& spec);

} // namespace qmc::oracle
