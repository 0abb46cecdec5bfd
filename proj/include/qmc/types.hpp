#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace qmc {

// Path-major dense storage: one simulated path per row, its steps contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Index = Eigen::Index;

enum class OptionKind { Call, Put };

enum class Method { ClosedForm, EuropeanMC, AmericanUpperBound };

// CLI / CSV spelling of a method ("closed-form", "european-mc", "american-ub").
std::string method_name(Method method);

// Vanilla option contract under constant-rate, constant-volatility GBM.
struct OptionSpec {
  double spot = 100.0;     // S0, > 0
  double strike = 100.0;   // exercise price, > 0
  double rate = 0.0;       // continuously compounded, per year
  double volatility = 0.0; // annualized, >= 0
  double maturity = 0.0;   // years, >= 0
  OptionKind kind = OptionKind::Call;
};

// Throws std::invalid_argument when a field is non-finite or out of range.
void validate(const OptionSpec& spec);

// max(s - strike, 0) for a call, max(strike - s, 0) for a put.
inline double intrinsic_value(OptionKind kind, double s, double strike) {
  const double diff = (kind == OptionKind::Call) ? s - strike : strike - s;
  return diff > 0.0 ? diff : 0.0;
}

struct PricingResult {
  double price = 0.0;
  double std_error = 0.0;
  Index n_paths = 0;
  double elapsed_s = 0.0;
  Method method = Method::ClosedForm;
  std::uint64_t seed = 0;
};

} // namespace qmc
