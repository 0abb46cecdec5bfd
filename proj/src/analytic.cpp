#include "qmc/analytic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qmc {

std::string method_name(Method method) {
  switch (method) {
    case Method::ClosedForm: return "closed-form";
    case Method::EuropeanMC: return "european-mc";
    case Method::AmericanUpperBound: return "american-ub";
  }
  return "unknown";
}

void validate(const OptionSpec& spec) {
  const auto fail = [](const char* what) {
    throw std::invalid_argument(std::string("OptionSpec: ") + what);
  };
  if (!std::isfinite(spec.spot) || !std::isfinite(spec.strike) ||
      !std::isfinite(spec.rate) || !std::isfinite(spec.volatility) ||
      !std::isfinite(spec.maturity)) {
    fail("all fields must be finite");
  }
  if (!(spec.spot > 0.0)) fail("spot must be > 0");
  if (!(spec.strike > 0.0)) fail("strike must be > 0");
  if (!(spec.volatility >= 0.0)) fail("volatility must be >= 0");
  if (!(spec.maturity >= 0.0)) fail("maturity must be >= 0");
}

double cnd(double d) {
  if (!std::isfinite(d)) {
    throw std::invalid_argument("cnd: input must be finite");
  }
  const double x = std::abs(d);
  double tail; // P(Z > x) for x >= 0
  if (x > 37.0) {
    tail = 0.0;
  } else {
    const double e = std::exp(-0.5 * x * x);
    if (x < 7.07106781186547) {
      // Hart rational P/Q; Q(0) = 2 P(0) so cnd(0) is exactly 1/2.
      double num = 3.52624965998911e-02;
      num = num * x + 0.700383064443688;
      num = num * x + 6.37396220353165;
      num = num * x + 33.912866078383;
      num = num * x + 112.079291497871;
      num = num * x + 221.213596169931;
      num = num * x + 220.206867912376;
      double den = 8.83883476483184e-02;
      den = den * x + 1.75566716318264;
      den = den * x + 16.064177579207;
      den = den * x + 86.7807322029461;
      den = den * x + 296.564248779674;
      den = den * x + 637.333633378831;
      den = den * x + 793.826512519948;
      den = den * x + 440.413735824752;
      tail = e * num / den;
    } else {
      // Continued-fraction tail; 2.506628... = sqrt(2 pi).
      double b = x + 0.65;
      b = x + 4.0 / b;
      b = x + 3.0 / b;
      b = x + 2.0 / b;
      b = x + 1.0 / b;
      tail = e / (b * 2.506628274631000502);
    }
  }
  return d > 0.0 ? 1.0 - tail : tail;
}

double moro_inv_cnd(double u) {
  if (!(u > 0.0) || !(u < 1.0)) {
    throw std::invalid_argument("moro_inv_cnd: u must lie strictly in (0,1)");
  }
  // Beasley-Springer central coefficients.
  static constexpr double a[4] = {2.50662823884, -18.61500062529,
                                  41.39119773534, -25.44106049637};
  static constexpr double b[4] = {-8.47351093090, 23.08336743743,
                                  -21.06224101826, 3.13082909833};
  // Moro tail coefficients (Chebyshev fit evaluated as a plain polynomial).
  static constexpr double c[9] = {
      0.3374754822726147, 0.9761690190917186, 0.1607979714918209,
      0.0276438810333863, 0.0038405729373609, 0.0003951896511919,
      0.0000321767881768, 0.0000002888167364, 0.0000003960315187};

  const double y = u - 0.5;
  if (std::abs(y) <= 0.42) {
    const double r = y * y;
    return y * (((a[3] * r + a[2]) * r + a[1]) * r + a[0]) /
           ((((b[3] * r + b[2]) * r + b[1]) * r + b[0]) * r + 1.0);
  }
  const double z = (y > 0.0) ? std::log(-std::log(1.0 - u))
                             : std::log(-std::log(u));
  double x = c[8];
  for (int i = 7; i >= 0; --i) x = x * z + c[i];
  return (y > 0.0) ? x : -x;
}

double bs_price(const OptionSpec& spec) {
  validate(spec);
  const double s = spec.spot;
  const double x = spec.strike;
  const double r = spec.rate;
  const double v = spec.volatility;
  const double t = spec.maturity;

  if (t == 0.0) return intrinsic_value(spec.kind, s, x);
  if (v == 0.0) {
    const double forward = s * std::exp(r * t);
    return std::exp(-r * t) * intrinsic_value(spec.kind, forward, x);
  }

  const double v_sqrt_t = v * std::sqrt(t);
  const double d1 = (std::log(s / x) + (r + 0.5 * v * v) * t) / v_sqrt_t;
  const double d2 = d1 - v_sqrt_t;
  const double disc = std::exp(-r * t);
  const double price = (spec.kind == OptionKind::Call)
                           ? s * cnd(d1) - x * disc * cnd(d2)
                           : x * disc * cnd(-d2) - s * cnd(-d1);
  return price > 0.0 ? price : 0.0;
}

} // namespace qmc
