#include "drs/sampler.hpp"

#include <algorithm>
#include <optional>

#include "drs/error.hpp"
#include "drs/primes.hpp"

namespace drs {

IndicatorPath sample_indicators(const SeriesParams& params, std::int64_t N,
                                RngStream& rng) {
  validate(params);
  if (N < 1) {
    fail(ErrorKind::Domain, "sample_indicators: N must be >= 1");
  }
  IndicatorPath path;
  path.bits.resize(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) {
    const double p = params.beta == 1.0 ? 1.0 / static_cast<double>(n)
                                        : std::pow(static_cast<double>(n), -params.beta);
    path.bits[static_cast<std::size_t>(n - 1)] = rng.uniform() < p ? 1 : 0;
  }
  return path;
}

RecordPath records_from_uniforms(std::int64_t n_max, RngStream& rng) {
  if (n_max < 1) {
    fail(ErrorKind::Domain, "records_from_uniforms: n_max must be >= 1");
  }
  const auto n = static_cast<std::size_t>(n_max);
  RecordPath path;
  path.indicators.bits.resize(n);
  path.uniforms.resize(n);
  path.running_max.resize(n);
  path.ratios.resize(n - 1);
  double max_so_far = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    path.uniforms[i] = u;
    const bool record = u > max_so_far;
    path.indicators.bits[i] = record ? 1 : 0;
    if (record) {
      max_so_far = u;
    }
    path.running_max[i] = max_so_far;
    if (i > 0) {
      path.ratios[i - 1] = path.running_max[i - 1] / path.running_max[i];
    }
  }
  return path;
}

namespace {

// Terms of one series variant: hit probability and contributed value of the
// i-th candidate index.
struct SeriesTerms {
  SeriesParams params;
  std::int64_t count = 0;
  const std::uint32_t* primes = nullptr;

  double position(std::int64_t i) const {
    return primes != nullptr ? static_cast<double>(primes[i]) : static_cast<double>(i + 1);
  }
  double prob(std::int64_t i) const {
    const double n = position(i);
    return params.beta == 1.0 ? 1.0 / n : std::pow(n, -params.beta);
  }
  double weight(std::int64_t i) const {
    const double n = position(i);
    if (params.variant == Variant::LogProduct) {
      return n < 2.0 ? 0.0 : -std::log1p(-1.0 / n);
    }
    return params.s == 1.0 ? 1.0 / n : std::pow(n, -params.s);
  }
};

SeriesTerms make_terms(const SeriesParams& params, std::int64_t N,
                       const PrimeTable* primes) {
  SeriesTerms terms;
  terms.params = params;
  if (params.variant == Variant::PrimesOnly) {
    terms.count = static_cast<std::int64_t>(primes->prime_count(N));
    terms.primes = primes->primes().data();
  } else {
    terms.count = N;
  }
  return terms;
}

}  // namespace

SampleBatch sample_series(const SeriesParams& params, std::int64_t N,
                          std::int64_t n_samples, const RngStream& rng, int threads,
                          const PrimeTable* primes, std::int64_t chunk_size) {
  validate(params);
  if (N < 1 || n_samples < 1 || chunk_size < 1) {
    fail(ErrorKind::Domain, "sample_series: N, n_samples and chunk_size must be >= 1");
  }
  std::optional<PrimeTable> own_table;
  if (params.variant == Variant::PrimesOnly &&
      (primes == nullptr || primes->limit() < N)) {
    own_table = sieve(std::max<std::int64_t>(N, 2));
    primes = &*own_table;
  }
  const SeriesTerms terms = make_terms(params, N, primes);

  SampleBatch batch;
  batch.params = params;
  batch.N = N;
  batch.seed = rng.seed();
  batch.stream_id = rng.stream_id();
  batch.chunk_size = chunk_size;
  batch.divergent = classify(params) == ConvergenceClass::Diverges;
  batch.values.resize(static_cast<std::size_t>(n_samples));

  const std::int64_t n_chunks = (n_samples + chunk_size - 1) / chunk_size;
  parallel_for(static_cast<std::size_t>(n_chunks), threads, [&](std::size_t c) {
    RngStream local = rng.substream(c);
    const std::int64_t begin = static_cast<std::int64_t>(c) * chunk_size;
    const std::int64_t end = std::min(n_samples, begin + chunk_size);
    for (std::int64_t k = begin; k < end; ++k) {
      double sum = 0.0;
      for_each_hit(
          terms.count, [&](std::int64_t i) { return terms.prob(i); }, local,
          [&](std::int64_t i) { sum += terms.weight(i); });
      batch.values[static_cast<std::size_t>(k)] = sum;
    }
  });
  return batch;
}

double max_truncated_value(const SeriesParams& params, std::int64_t N) {
  validate(params);
  std::optional<PrimeTable> table;
  if (params.variant == Variant::PrimesOnly) {
    table = sieve(std::max<std::int64_t>(N, 2));
  }
  const SeriesTerms terms = make_terms(params, N, table ? &*table : nullptr);
  CompensatedSum acc;
  for (std::int64_t i = 0; i < terms.count; ++i) {
    acc += terms.weight(i);
  }
  return acc.value();
}

double block_single_hit_prob(const SeriesParams& params, int k) {
  validate(params);
  if (params.beta != 1.0) {
    fail(ErrorKind::Unsupported, "block_single_hit_prob: requires beta = 1");
  }
  if (k < 0 || k > 30) {
    fail(ErrorKind::Domain, "block_single_hit_prob: k must be in [0, 30]");
  }
  const std::int64_t first = (std::int64_t{1} << k) + 1;
  const std::int64_t last = std::int64_t{1} << (k + 1);
  CompensatedSum log_all_miss;
  for (std::int64_t m = first; m <= last; ++m) {
    log_all_miss += std::log1p(-1.0 / static_cast<double>(m));
  }
  const double log_product = log_all_miss.value();
  CompensatedSum total;
  for (std::int64_t n = first; n <= last; ++n) {
    const double x = static_cast<double>(n);
    // (1/n) · Π_{m != n} (1 - 1/m)
    total += std::exp(log_product - std::log1p(-1.0 / x) - std::log(x));
  }
  return total.value();
}

double BlockConditional::log_prob(std::int64_t n) const {
  if (n < first() || n > last()) {
    fail(ErrorKind::Domain, "BlockConditional: position outside the block");
  }
  return -log_z_k - std::log(static_cast<double>(n - 1));
}

std::vector<double> BlockConditional::probabilities() const {
  if (k > 24) {
    fail(ErrorKind::Capacity, "BlockConditional: dense law limited to k <= 24");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(last() - first() + 1));
  for (std::int64_t n = first(); n <= last(); ++n) {
    out.push_back(prob(n));
  }
  return out;
}

BlockConditional block_conditional(int k) {
  if (k < 1 || k > 61) {
    fail(ErrorKind::Domain, "block_conditional: k must be in [1, 61]");
  }
  BlockConditional law;
  law.k = k;
  if (k <= 26) {
    CompensatedSum z;
    const std::int64_t lo = std::int64_t{1} << k;
    for (std::int64_t m = (std::int64_t{1} << (k + 1)) - 1; m >= lo; --m) {
      z += 1.0 / static_cast<double>(m);
    }
    law.z_k = z.value();
  } else {
    // ψ(2x) - ψ(x) from the asymptotic digamma series; x >= 2^27.
    const double x = std::ldexp(1.0, k);
    auto psi_tail = [](double v) {
      const double inv2 = 1.0 / (v * v);
      return -0.5 / v - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
    };
    law.z_k = kLog2 + psi_tail(2.0 * x) - psi_tail(x);
  }
  law.log_z_k = std::log(law.z_k);
  return law;
}

}  // namespace drs
