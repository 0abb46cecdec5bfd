#pragma once

#include "qmc/path_engine.hpp"
#include "qmc/types.hpp"

#include <cstdint>

namespace qmc {

// Quasi-Monte Carlo European price: terminal payoffs averaged with the
// pairwise reduction, then nothing else -- each payoff is discounted before
// averaging so the standard error is over discounted payoffs. S_T comes from
// a single GBM step of width T. Deterministic given (spec, n_paths, seed).
PricingResult mc_european_price(const OptionSpec& spec, Index n_paths,
                                std::uint64_t seed, const ExecPolicy& exec = {});

} // namespace qmc
