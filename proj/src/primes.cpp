#include "drs/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "drs/error.hpp"
#include "drs/sampler.hpp"

namespace drs {

int PrimeTable::mobius(std::int64_t m) const {
  if (m < 1 || m > limit_) {
    fail(ErrorKind::Domain, "mobius: argument outside the sieved range");
  }
  return mobius_[static_cast<std::size_t>(m)];
}

bool PrimeTable::is_prime(std::int64_t m) const {
  if (m < 1 || m > limit_) {
    fail(ErrorKind::Domain, "is_prime: argument outside the sieved range");
  }
  return std::binary_search(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(m));
}

std::size_t PrimeTable::prime_count(std::int64_t x) const {
  if (x > limit_) {
    fail(ErrorKind::Domain, "prime_count: argument beyond the sieved range");
  }
  if (x < 2) {
    return 0;
  }
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(x)) -
      primes_.begin());
}

PrimeTable sieve(std::int64_t limit) {
  if (limit < 2) {
    fail(ErrorKind::Domain, "sieve: limit must be >= 2");
  }
  if (limit > kSieveCap) {
    fail(ErrorKind::Capacity, "sieve: limit exceeds 1e9");
  }

  auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;

  // Base primes up to √limit by a plain sieve.
  std::vector<std::uint8_t> small_composite(static_cast<std::size_t>(root + 1), 0);
  std::vector<std::uint32_t> base;
  for (std::int64_t i = 2; i <= root; ++i) {
    if (small_composite[static_cast<std::size_t>(i)]) continue;
    base.push_back(static_cast<std::uint32_t>(i));
    for (std::int64_t j = i * i; j <= root; j += i) {
      small_composite[static_cast<std::size_t>(j)] = 1;
    }
  }

  std::vector<std::int8_t> mobius(static_cast<std::size_t>(limit + 1), 0);
  std::vector<std::uint32_t> primes;
  primes.reserve(static_cast<std::size_t>(1.3 * static_cast<double>(limit) /
                                          std::log(static_cast<double>(limit))) +
                 16);

  constexpr std::int64_t kSegment = std::int64_t{1} << 18;
  std::vector<std::uint32_t> product(static_cast<std::size_t>(kSegment));
  for (std::int64_t lo = 1; lo <= limit; lo += kSegment) {
    const std::int64_t hi = std::min(limit, lo + kSegment - 1);
    const auto len = static_cast<std::size_t>(hi - lo + 1);
    std::int8_t* mu = mobius.data() + lo;
    std::fill(mu, mu + len, std::int8_t{1});
    std::fill(product.begin(), product.begin() + static_cast<std::ptrdiff_t>(len), 1u);

    for (std::uint32_t p : base) {
      const std::int64_t pp = static_cast<std::int64_t>(p);
      for (std::int64_t m = ((lo + pp - 1) / pp) * pp; m <= hi; m += pp) {
        const auto idx = static_cast<std::size_t>(m - lo);
        mu[idx] = static_cast<std::int8_t>(-mu[idx]);
        product[idx] *= p;
      }
      const std::int64_t sq = pp * pp;
      for (std::int64_t m = ((lo + sq - 1) / sq) * sq; m <= hi; m += sq) {
        mu[m - lo] = 0;
      }
    }
    for (std::int64_t m = lo; m <= hi; ++m) {
      const auto idx = static_cast<std::size_t>(m - lo);
      // A square-free remainder above √limit is a single prime.
      if (mu[idx] != 0 && static_cast<std::int64_t>(product[idx]) != m) {
        mu[idx] = static_cast<std::int8_t>(-mu[idx]);
      }
      if (m >= 2) {
        const bool prime = product[idx] == 1u ||
                           (m <= root && !small_composite[static_cast<std::size_t>(m)]);
        if (prime) primes.push_back(static_cast<std::uint32_t>(m));
      }
    }
  }
  return PrimeTable(limit, std::move(primes), std::move(mobius));
}

std::int64_t squarefree_count(const PrimeTable& pt, std::int64_t x) {
  if (x < 0 || x > pt.limit()) {
    fail(ErrorKind::Domain, "squarefree_count: x outside the sieved range");
  }
  std::int64_t count = 0;
  for (std::int64_t m = 1; m <= x; ++m) {
    count += pt.mobius(m) != 0 ? 1 : 0;
  }
  return count;
}

double mertens_ratio(const PrimeTable& pt, std::int64_t x) {
  if (x < 3) {
    fail(ErrorKind::Domain, "mertens_ratio: x must be >= 3");
  }
  if (x - 1 > pt.limit()) {
    fail(ErrorKind::Domain, "mertens_ratio: table does not cover primes below x");
  }
  CompensatedSum log_product;
  for (std::uint32_t p : pt.primes()) {
    if (static_cast<std::int64_t>(p) >= x) break;
    log_product += std::log1p(-1.0 / static_cast<double>(p));
  }
  return std::exp(log_product.value() + kEulerGamma) * std::log(static_cast<double>(x));
}

double prime_tail_bound(const PrimeTable& pt, std::int64_t N, double s) {
  if (!(s > 0.0) || N < 2 || N > pt.limit()) {
    fail(ErrorKind::Domain, "prime_tail_bound: need s > 0 and 2 <= N <= limit");
  }
  const auto& primes = pt.primes();
  auto it = std::lower_bound(primes.begin(), primes.end(), static_cast<std::uint32_t>(N));
  CompensatedSum acc;
  for (auto p = primes.end(); p != it;) {
    --p;
    acc += std::pow(static_cast<double>(*p), -1.0 - s);
  }
  // Σ_{p > L} p^{-1-s} <= ∫_L^∞ π(x)(1+s)x^{-2-s} dx <= 1.25506 (1+s) L^{-s} / (s log L)
  const double L = static_cast<double>(pt.limit());
  acc += 1.25506 * (1.0 + s) * std::pow(L, -s) / (s * std::log(L));
  return acc.value();
}

std::vector<Interval> merge_intervals(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const Interval& iv : intervals) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

double total_length(std::span<const Interval> intervals) {
  CompensatedSum acc;
  for (const Interval& iv : intervals) {
    acc += iv.hi - iv.lo;
  }
  return acc.value();
}

bool contains(std::span<const Interval> merged, double x) {
  auto it = std::upper_bound(merged.begin(), merged.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == merged.begin()) {
    return false;
  }
  --it;
  return x <= it->hi;
}

SetB build_B_N(const PrimeTable& pt, std::int64_t N, double epsilon, double s,
               double C) {
  if (!(epsilon > 0.0) || !(epsilon < s) || N < 2 || !(C > 0.0)) {
    fail(ErrorKind::Domain, "build_B_N: need 0 < epsilon < s, N >= 2, C > 0");
  }
  const double bound = std::pow(static_cast<double>(N), epsilon);
  if (bound - 1.0 > static_cast<double>(pt.limit())) {
    fail(ErrorKind::Domain, "build_B_N: table does not cover N^epsilon");
  }
  SetB b;
  b.N = N;
  b.epsilon = epsilon;
  b.s = s;
  b.C = C;
  b.width = 2.0 * C * std::pow(static_cast<double>(N), -s);

  std::vector<Interval> raw;
  const auto& primes = pt.primes();
  for (std::int64_t m = 1; static_cast<double>(m) < bound; ++m) {
    if (m > 1 && pt.mobius(m) == 0) continue;
    double x = 0.0;
    std::int64_t rest = m;
    for (std::uint32_t p : primes) {
      const auto pp = static_cast<std::int64_t>(p);
      if (pp * pp > rest) break;
      if (rest % pp == 0) {
        x += std::pow(static_cast<double>(pp), -s);
        rest /= pp;
      }
    }
    if (rest > 1) {
      x += std::pow(static_cast<double>(rest), -s);
    }
    raw.push_back({x, x + b.width});
    ++b.squarefree_terms;
  }
  b.intervals = merge_intervals(std::move(raw));
  b.measure = total_length(b.intervals);
  return b;
}

SingularityReport singularity_experiment(const SingularityConfig& config,
                                         const PrimeTable* pt) {
  if (!(config.epsilon > 0.0) || !(config.epsilon < config.s)) {
    fail(ErrorKind::Domain, "singularity_experiment: need 0 < epsilon < s");
  }
  if (config.N < 2 || config.trials < 1 || !(config.atom_bin_width > 0.0)) {
    fail(ErrorKind::Domain, "singularity_experiment: need N >= 2, trials >= 1");
  }
  std::int64_t truncation = config.truncation > 0 ? config.truncation : 100 * config.N;
  truncation = std::min(truncation, kSieveCap);
  if (truncation < config.N) {
    fail(ErrorKind::Domain, "singularity_experiment: truncation below N");
  }
  std::optional<PrimeTable> own;
  if (pt == nullptr || pt->limit() < truncation) {
    own = sieve(truncation);
    pt = &*own;
  }

  SingularityReport report;
  report.config = config;
  report.truncation = truncation;
  const double Ns = std::pow(static_cast<double>(config.N), config.s);
  report.C = Ns * prime_tail_bound(*pt, config.N, config.s);

  const SetB b = build_B_N(*pt, config.N, config.epsilon, config.s, report.C);
  report.B_measure = b.measure;
  report.interval_count = static_cast<std::int64_t>(b.intervals.size());
  report.squarefree_terms = b.squarefree_terms;
  report.intervals = b.intervals;

  // E Σ_{p > truncation} p^{-1-s}, from the Rosser–Schoenfeld bound alone.
  const double L = static_cast<double>(truncation);
  report.truncation_tail_bound =
      1.25506 * (1.0 + config.s) * std::pow(L, -config.s) / (config.s * std::log(L));

  SeriesParams params{config.s, 1.0, Variant::PrimesOnly};
  const SampleBatch batch = sample_series(params, truncation, config.trials,
                                          RngStream(config.seed, 0), config.threads, pt);
  std::int64_t hits = 0;
  for (double v : batch.values) {
    hits += contains(b.intervals, v) ? 1 : 0;
  }
  const double n = static_cast<double>(config.trials);
  report.mc_prob = static_cast<double>(hits) / n;
  report.mc_stderr = std::sqrt(report.mc_prob * (1.0 - report.mc_prob) / n);

  std::vector<double> sorted = batch.values;
  std::sort(sorted.begin(), sorted.end());
  std::size_t best = 0;
  double best_left = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double bin = std::floor(sorted[i] / config.atom_bin_width);
    std::size_t j = i;
    while (j < sorted.size() && std::floor(sorted[j] / config.atom_bin_width) == bin) ++j;
    if (j - i > best) {
      best = j - i;
      best_left = bin * config.atom_bin_width;
    }
    i = j;
  }
  report.max_bin_mass = static_cast<double>(best) / n;
  report.max_bin_left = best_left;
  return report;
}

ApCheck general_ap_check(const PrimeTable& pt, std::span<const double> coefficients,
                         ApTail tail) {
  if (coefficients.empty()) {
    fail(ErrorKind::Domain, "general_ap_check: empty coefficient sequence");
  }
  const auto& primes = pt.primes();
  const std::size_t n = std::min(coefficients.size(), primes.size());
  const double L = static_cast<double>(primes[n - 1]);

  ApCheck out;
  // (i) increment of Σ_{a_p != 0} 1/p over (√L, L]; full support gives ≈ log 2.
  const double root = std::sqrt(L);
  CompensatedSum support;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = primes[i];
    if (p > root && coefficients[i] != 0.0) support += 1.0 / p;
  }
  out.support_increment = support.value();
  out.divergent_support = out.support_increment >= 0.25 * kLog2;

  // (ii) Σ |a_p|/p: decade increments must shrink and the tail must be finite.
  const double top = std::pow(10.0, std::floor(std::log10(L)));
  CompensatedSum last;
  CompensatedSum previous;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = primes[i];
    const double term = std::abs(coefficients[i]) / p;
    if (p > top / 10.0 && p <= top) last += term;
    if (p > top / 100.0 && p <= top / 10.0) previous += term;
  }
  out.last_decade_increment = last.value();
  out.previous_decade_increment = previous.value();
  if (tail.amplitude == 0.0) {
    out.tail_beyond_limit = 0.0;
  } else if (tail.exponent > 0.0) {
    out.tail_beyond_limit = tail.amplitude * 1.25506 * (1.0 + tail.exponent) *
                            std::pow(L, -tail.exponent) / (tail.exponent * std::log(L));
  } else {
    out.tail_beyond_limit = std::numeric_limits<double>::infinity();
  }
  out.absolutely_summable = std::isfinite(out.tail_beyond_limit) &&
                            out.last_decade_increment < out.previous_decade_increment;
  if (out.last_decade_increment == 0.0 && out.previous_decade_increment == 0.0) {
    out.absolutely_summable = std::isfinite(out.tail_beyond_limit);
  }

  // (iii) log T(x) against log x at decades x = 10^j <= L/10.
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    suffix[i] = suffix[i + 1] + std::abs(coefficients[i]) / static_cast<double>(primes[i]);
  }
  std::vector<std::pair<double, double>> pts;
  for (double x = 100.0; x <= L / 10.0; x *= 10.0) {
    const auto idx = static_cast<std::size_t>(
        std::upper_bound(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(n),
                         static_cast<std::uint32_t>(x)) -
        primes.begin());
    const double T = suffix[idx] + out.tail_beyond_limit;
    if (T > 0.0 && std::isfinite(T)) {
      pts.emplace_back(std::log(x), std::log(T));
    }
  }
  if (pts.size() >= 2) {
    const SlopeFit fit = fit_slope(pts);
    out.fitted_c = -fit.slope;
    out.fitted_K = std::exp(fit.intercept);
    out.power_tail = out.fitted_c > 0.05 && std::isfinite(out.tail_beyond_limit);
  }
  return out;
}

}  // namespace drs
