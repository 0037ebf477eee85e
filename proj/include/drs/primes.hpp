#pragma once

// Prime sieve with Möbius values, Mertens products, and the singularity
// experiment for the prime-restricted series  S = Σ_p I_p / p^s.

#include <cstdint>
#include <span>
#include <vector>

#include "drs/numerics.hpp"

namespace drs {

inline constexpr std::int64_t kSieveCap = 1'000'000'000;

class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::int64_t limit, std::vector<std::uint32_t> primes,
             std::vector<std::int8_t> mobius)
      : limit_(limit), primes_(std::move(primes)), mobius_(std::move(mobius)) {}

  std::int64_t limit() const noexcept { return limit_; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

  /// μ(m) for 1 <= m <= limit.
  int mobius(std::int64_t m) const;
  bool is_prime(std::int64_t m) const;

  /// Number of primes <= x (x <= limit).
  std::size_t prime_count(std::int64_t x) const;

 private:
  std::int64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
  std::vector<std::int8_t> mobius_;  // index m, entry 0 unused
};

/// Segmented sieve of Eratosthenes producing primes and μ on [1, limit].
PrimeTable sieve(std::int64_t limit);

/// Σ_{m <= x} |μ(m)|.
std::int64_t squarefree_count(const PrimeTable& pt, std::int64_t x);

/// Π_{p < x} (1 - 1/p) · e^γ · log x, accumulated in log space.
double mertens_ratio(const PrimeTable& pt, std::int64_t x);

/// Rigorous upper bound on Σ_{p >= N} p^{-1-s}: exact sum over the table's
/// primes plus a Rosser–Schoenfeld bound (π(x) < 1.25506 x / log x) beyond.
double prime_tail_bound(const PrimeTable& pt, std::int64_t N, double s);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Sorts and unions closed intervals.
std::vector<Interval> merge_intervals(std::vector<Interval> intervals);
double total_length(std::span<const Interval> intervals);
bool contains(std::span<const Interval> merged, double x);

struct SetB {
  std::int64_t N = 0;
  double epsilon = 0.0;
  double s = 0.0;
  double C = 0.0;
  double width = 0.0;          // 2C / N^s
  std::int64_t squarefree_terms = 0;  // number of square-free m < N^ε
  std::vector<Interval> intervals;  // merged
  double measure = 0.0;
};

/// Union of [x_m, x_m + 2C/N^s] over square-free m < N^ε, where
/// x_m = Σ_{p | m} p^{-s}.
SetB build_B_N(const PrimeTable& pt, std::int64_t N, double epsilon, double s,
               double C);

struct SingularityConfig {
  double s = 1.0;
  double epsilon = 0.5;
  std::int64_t N = 1'000'000;
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  int threads = 0;
  double atom_bin_width = 1e-9;
  /// Sampling truncation; 0 selects 100·N (capped by the sieve).
  std::int64_t truncation = 0;
};

struct SingularityReport {
  SingularityConfig config;
  double C = 0.0;
  double B_measure = 0.0;
  std::int64_t interval_count = 0;
  std::int64_t squarefree_terms = 0;
  double mc_prob = 0.0;
  double mc_stderr = 0.0;
  std::int64_t truncation = 0;
  double truncation_tail_bound = 0.0;  // E of the dropped prime tail
  double max_bin_mass = 0.0;           // largest mass in one atom-width bin
  double max_bin_left = 0.0;
  std::vector<Interval> intervals;
};

/// Monte Carlo estimate of P(S_primes ∈ B_N) with C = N^s · prime tail bound.
/// A table covering the truncation level is built if `pt` is too small.
SingularityReport singularity_experiment(const SingularityConfig& config,
                                         const PrimeTable* pt = nullptr);

/// Tail model for coefficients beyond the table: |a_p| <= amplitude · p^{-exponent}.
struct ApTail {
  double amplitude = 0.0;
  double exponent = 0.0;
};

struct ApCheck {
  bool divergent_support = false;   // (i)   Σ_{a_p != 0} 1/p = ∞
  bool absolutely_summable = false; // (ii)  Σ |a_p|/p < ∞
  bool power_tail = false;          // (iii) Σ_{p>x} |a_p|/p <= K x^{-c}
  double support_increment = 0.0;   // Σ_{√L < p <= L, a_p != 0} 1/p
  double last_decade_increment = 0.0;
  double previous_decade_increment = 0.0;
  double tail_beyond_limit = 0.0;
  double fitted_K = 0.0;
  double fitted_c = 0.0;
};

/// Numerical check of the three hypotheses on (a_p); coefficients[i] belongs
/// to pt.primes()[i].
ApCheck general_ap_check(const PrimeTable& pt, std::span<const double> coefficients,
                         ApTail tail);

}  // namespace drs
