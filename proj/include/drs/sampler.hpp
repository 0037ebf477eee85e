#pragma once

// Seeded Monte Carlo generation of indicator sequences, record indicators,
// truncated sums, and the exact single-hit structure of dyadic blocks.

#include <cmath>
#include <cstdint>
#include <vector>

#include "drs/numerics.hpp"
#include "drs/series_model.hpp"

namespace drs {

class PrimeTable;

inline constexpr std::int64_t kDefaultChunk = std::int64_t{1} << 16;

struct IndicatorPath {
  std::vector<std::uint8_t> bits;  // bits[n-1] = I_n
  std::int64_t N() const noexcept { return static_cast<std::int64_t>(bits.size()); }
  bool at(std::int64_t n) const { return bits.at(static_cast<std::size_t>(n - 1)) != 0; }
};

/// Independent I_n with P(I_n = 1) = n^{-β}, n = 1..N.
IndicatorPath sample_indicators(const SeriesParams& params, std::int64_t N,
                                RngStream& rng);

struct RecordPath {
  IndicatorPath indicators;
  std::vector<double> uniforms;     // U_1..U_n
  std::vector<double> running_max;  // M_1..M_n
  std::vector<double> ratios;       // M_{j-1}/M_j for j = 2..n (index j-2)
};

/// Record indicators I_n = 1(U_n > U_j for all j < n) from fresh uniforms.
RecordPath records_from_uniforms(std::int64_t n_max, RngStream& rng);

/// Visits every index i in [0, count) whose indicator fires, where indicator
/// i fires with probability prob(i), nonincreasing in i. Uses geometric skips
/// under the current dominating rate with thinning, so the cost scales with
/// the number of hits rather than with count.
template <class Prob, class OnHit>
void for_each_hit(std::int64_t count, Prob&& prob, RngStream& rng, OnHit&& on_hit) {
  std::int64_t i = 0;
  while (i < count) {
    const double q = prob(i);
    if (q >= 1.0) {
      on_hit(i);
      ++i;
      continue;
    }
    if (!(q > 0.0)) {
      return;
    }
    const double skip = std::floor(std::log(rng.uniform_pos()) / std::log1p(-q));
    if (!(skip < static_cast<double>(count - i))) {
      return;
    }
    const std::int64_t j = i + static_cast<std::int64_t>(skip);
    const double accept = prob(j) / q;
    if (rng.uniform() < accept) {
      on_hit(j);
    }
    i = j + 1;
  }
}

struct SampleBatch {
  SeriesParams params;
  std::int64_t N = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::int64_t chunk_size = kDefaultChunk;
  bool divergent = false;  // s + β <= 1: values grow without bound in N
  std::vector<double> values;
};

/// n_samples realizations of the sum truncated at N. Chunk c of
/// `chunk_size` samples draws from rng.substream(c), so the output does not
/// depend on `threads`. PrimesOnly needs a table covering N (built if null).
SampleBatch sample_series(const SeriesParams& params, std::int64_t N,
                          std::int64_t n_samples, const RngStream& rng,
                          int threads = 0, const PrimeTable* primes = nullptr,
                          std::int64_t chunk_size = kDefaultChunk);

/// Largest attainable truncated value Σ_{n<=N} n^{-s} (variant-aware).
double max_truncated_value(const SeriesParams& params, std::int64_t N);

/// P(exactly one I_n = 1 in (2^k, 2^{k+1}]) for β = 1.
double block_single_hit_prob(const SeriesParams& params, int k);

/// Law of the hit position given a single hit in block k:
/// n ↦ 1/(z_k (n-1)) on (2^k, 2^{k+1}].
struct BlockConditional {
  int k = 0;
  double z_k = 0.0;
  double log_z_k = 0.0;

  std::int64_t first() const noexcept { return (std::int64_t{1} << k) + 1; }
  std::int64_t last() const noexcept { return std::int64_t{1} << (k + 1); }
  double log_prob(std::int64_t n) const;
  double prob(std::int64_t n) const { return std::exp(log_prob(n)); }
  /// Dense probabilities for n = first()..last(); k <= 24.
  std::vector<double> probabilities() const;
};

BlockConditional block_conditional(int k);

}  // namespace drs
