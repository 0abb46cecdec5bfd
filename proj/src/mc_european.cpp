#include "qmc/mc_european.hpp"

#include "qmc/analytic.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace qmc {

PricingResult mc_european_price(const OptionSpec& spec, Index n_paths,
                                std::uint64_t seed, const ExecPolicy& exec) {
  validate(spec);
  if (n_paths < 2) {
    throw std::invalid_argument("mc_european_price: n_paths must be >= 2");
  }
  const auto start = std::chrono::steady_clock::now();

  if (spec.volatility == 0.0 || spec.maturity == 0.0) {
    // Every path is the same deterministic forward; averaging would only add
    // rounding noise, so the degenerate value is returned exactly.
    const double disc = std::exp(-spec.rate * spec.maturity);
    const double forward = spec.spot * std::exp(spec.rate * spec.maturity);
    const double price = disc * intrinsic_value(spec.kind, forward, spec.strike);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return PricingResult{price, 0.0, n_paths, elapsed, Method::EuropeanMC, seed};
  }

  const Vector terminal = simulate_terminal(spec, n_paths, seed, exec);
  const double disc = std::exp(-spec.rate * spec.maturity);
  const double strike = spec.strike;
  const OptionKind kind = spec.kind;
  Vector payoffs(n_paths);
  parallel_for_chunks(n_paths, exec, [&](Index begin, Index end) {
    for (Index p = begin; p < end; ++p) {
      payoffs[p] = disc * intrinsic_value(kind, terminal[p], strike);
    }
  });
  const ReduceStats stats = reduce_stats(payoffs, exec.lanes);

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return PricingResult{stats.mean, stats.std_error, n_paths, elapsed,
                       Method::EuropeanMC, seed};
}

} // namespace qmc
