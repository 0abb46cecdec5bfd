#pragma once

#include "qmc/types.hpp"

#include <cstdint>
#include <vector>

namespace qmc {

// Knuth MMIX linear congruential generator; full period mod 2^64.
struct Lcg {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state;
  }

  // Draw in [0, bound) by fixed-point scaling of the next LCG output.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }
};

// Per-dimension scramble seed derived from the master seed (splitmix64 mix),
// so each dimension gets its own permutation stream.
std::uint64_t dimension_seed(std::uint64_t master_seed, Index dim);

// Fisher-Yates order driven by the LCG: out[i] = in[perm[i]].
std::vector<std::uint32_t> permutation_indices(Index n, std::uint64_t seed);

// Reorders `values` with the LCG-driven permutation; the multiset of values
// is preserved exactly. Throws on an empty input.
std::vector<double> lcg_permute(const std::vector<double>& values,
                                std::uint64_t seed);

// Van der Corput radical inverse of `index` in `base`, confined to
// [1e-12, 1 - 1e-12] by construction.
double radical_inverse(std::uint64_t index, std::uint32_t base);

// Scrambled low-discrepancy stream. Dimension d draws the Halton sequence in
// the d-th prime base (index 0 skipped); the order along the path axis is
// shuffled per dimension with an LCG-driven permutation. Every value at
// (path, dim) is a pure function of (seed, dimensions, length), so disjoint
// blocks can be read or generated concurrently once the stream is built.
class QuasiStream {
 public:
  QuasiStream(Index dimensions, Index length, std::uint64_t seed);

  Index dimensions() const { return dims_; }
  Index length() const { return length_; }
  std::uint64_t seed() const { return seed_; }
  std::uint32_t base(Index dim) const { return bases_[static_cast<std::size_t>(dim)]; }

  // Uniform draw in (0,1), strictly.
  double uniform_at(Index path, Index dim) const;
  // Standard normal draw: moro_inv_cnd applied to uniform_at.
  double normal_at(Index path, Index dim) const;

 private:
  Index dims_;
  Index length_;
  std::uint64_t seed_;
  std::vector<std::uint32_t> bases_;
  std::vector<std::vector<std::uint32_t>> perm_; // per-dim path-index shuffle
};

// [length x dimensions] matrix of scrambled quasi-uniform draws in (0,1).
Matrix uniform_matrix(Index dimensions, Index length, std::uint64_t seed);

// Entrywise Moro inversion; shape preserved. Throws if an entry is outside (0,1).
Matrix to_normal(const Matrix& uniforms);

} // namespace qmc
