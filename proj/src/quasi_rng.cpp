#include "qmc/quasi_rng.hpp"

#include "qmc/analytic.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace qmc {

namespace {

constexpr double kEndpointEps = 1e-12;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::uint32_t> first_primes(Index count) {
  std::vector<std::uint32_t> primes;
  primes.reserve(static_cast<std::size_t>(count));
  std::uint32_t candidate = 2;
  while (primes.size() < static_cast<std::size_t>(count)) {
    bool is_prime = true;
    for (std::uint32_t d = 2; d * d <= candidate; ++d) {
      if (candidate % d == 0) { is_prime = false; break; }
    }
    if (is_prime) primes.push_back(candidate);
    ++candidate;
  }
  return primes;
}

} // namespace

std::uint64_t dimension_seed(std::uint64_t master_seed, Index dim) {
  std::uint64_t state = master_seed;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (static_cast<std::uint64_t>(dim) + 0x632be59bd9b4e019ULL);
  return splitmix64(state);
}

std::vector<std::uint32_t> permutation_indices(Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("permutation_indices: n must be >= 1");
  if (static_cast<std::uint64_t>(n) > std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("permutation_indices: n exceeds the 2^32-1 supported maximum");
  }
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
  Lcg lcg{seed};
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(lcg.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
  }
  return idx;
}

std::vector<double> lcg_permute(const std::vector<double>& values, std::uint64_t seed) {
  if (values.empty()) throw std::invalid_argument("lcg_permute: array must be non-empty");
  const auto idx = permutation_indices(static_cast<Index>(values.size()), seed);
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[idx[i]];
  return out;
}

double radical_inverse(std::uint64_t index, std::uint32_t base) {
  const double inv_base = 1.0 / base;
  double scale = inv_base;
  double value = 0.0;
  while (index != 0) {
    value += static_cast<double>(index % base) * scale;
    index /= base;
    scale *= inv_base;
  }
  if (value < kEndpointEps) value = kEndpointEps;
  if (value > 1.0 - kEndpointEps) value = 1.0 - kEndpointEps;
  return value;
}

QuasiStream::QuasiStream(Index dimensions, Index length, std::uint64_t seed)
    : dims_(dimensions), length_(length), seed_(seed) {
  if (dims_ < 1) throw std::invalid_argument("QuasiStream: dimensions must be >= 1");
  if (length_ < 1) throw std::invalid_argument("QuasiStream: length must be >= 1");
  bases_ = first_primes(dims_);
  perm_.reserve(static_cast<std::size_t>(dims_));
  for (Index d = 0; d < dims_; ++d) {
    perm_.push_back(permutation_indices(length_, dimension_seed(seed_, d)));
  }
}

double QuasiStream::uniform_at(Index path, Index dim) const {
  const std::uint64_t halton_index =
      static_cast<std::uint64_t>(perm_[static_cast<std::size_t>(dim)]
                                      [static_cast<std::size_t>(path)]) + 1;
  return radical_inverse(halton_index, bases_[static_cast<std::size_t>(dim)]);
}

double QuasiStream::normal_at(Index path, Index dim) const {
  return moro_inv_cnd(uniform_at(path, dim));
}

Matrix uniform_matrix(Index dimensions, Index length, std::uint64_t seed) {
  QuasiStream stream(dimensions, length, seed);
  Matrix u(length, dimensions);
  for (Index p = 0; p < length; ++p) {
    for (Index d = 0; d < dimensions; ++d) u(p, d) = stream.uniform_at(p, d);
  }
  return u;
}

Matrix to_normal(const Matrix& uniforms) {
  return uniforms.unaryExpr([](double u) { return moro_inv_cnd(u); });
}

} // namespace qmc
