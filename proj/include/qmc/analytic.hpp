#pragma once

#include "qmc/types.hpp"

namespace qmc {

// Standard normal CDF via the Hart (1968) rational approximation, coefficients
// as tabulated by West, "Better approximations to cumulative normal functions"
// (Wilmott Magazine, 2005). Absolute error is near double precision, far below
// the 1e-7 budget; cnd(-d) == 1 - cnd(d) holds exactly by reflection.
double cnd(double d);

// Inverse standard normal CDF, Moro (1995) "The Full Monte", Risk 8(2):
// Beasley-Springer rational fit for |u - 0.5| <= 0.42 plus Moro's log-log
// polynomial tails. Coefficients as printed in Glasserman, "Monte Carlo
// Methods in Financial Engineering", fig. 2.12; max error ~3e-9 on
// (1e-10, 1 - 1e-10). Requires 0 < u < 1 strictly, never clamps.
double moro_inv_cnd(double u);

// Black-Scholes closed form for the European call/put. Degenerate limits:
// maturity == 0 returns intrinsic value, volatility == 0 the discounted
// deterministic-forward payoff.
double bs_price(const OptionSpec& spec);

} // namespace qmc
