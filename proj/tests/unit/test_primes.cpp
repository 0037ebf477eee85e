#include <doctest.h>

#include <cmath>
#include <vector>

#include "drs/error.hpp"
#include "drs/primes.hpp"

using namespace drs;

namespace {

bool trial_prime(long long m) {
  if (m < 2) return false;
  for (long long d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

int trial_mobius(long long m) {
  int sign = 1;
  for (long long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      m /= d;
      if (m % d == 0) return 0;
      sign = -sign;
    }
  }
  if (m > 1) sign = -sign;
  return sign;
}

}  // namespace

TEST_CASE("sieve agrees with trial division") {
  const PrimeTable pt = sieve(20000);
  std::size_t count = 0;
  for (long long m = 1; m <= 20000; ++m) {
    CHECK(pt.is_prime(m) == trial_prime(m));
    CHECK(pt.mobius(m) == trial_mobius(m));
    count += trial_prime(m) ? 1 : 0;
    if (m % 1000 == 0) CHECK(pt.prime_count(m) == count);
  }
}

TEST_CASE("known prime counts") {
  const PrimeTable pt = sieve(1000000);
  CHECK(pt.prime_count(10) == 4);
  CHECK(pt.prime_count(100) == 25);
  CHECK(pt.prime_count(1000000) == 78498);
  CHECK(pt.primes().back() == 999983u);
  CHECK_THROWS_AS(pt.prime_count(1000001), Error);
}

TEST_CASE("square-free counts") {
  const PrimeTable pt = sieve(100000);
  CHECK(squarefree_count(pt, 100) == 61);
  CHECK(squarefree_count(pt, 100000) == 60794);
}

TEST_CASE("Mertens ratio against a direct product") {
  const PrimeTable pt = sieve(100000);
  for (long long x : {10LL, 1000LL, 100000LL}) {
    long double prod = 1.0L;
    for (long long p = 2; p < x; ++p)
      if (trial_prime(p)) prod *= 1.0L - 1.0L / p;
    const double ref = double(prod * std::exp(0.57721566490153286061L) * std::log((long double)x));
    CHECK(mertens_ratio(pt, x) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mertens_ratio(pt, 2), Error);
}

TEST_CASE("prime tail bound dominates the tail") {
  const PrimeTable big = sieve(2000000);
  const PrimeTable small = sieve(20000);
  long double exact = 0.0L;
  for (std::uint32_t p : big.primes())
    if (p >= 1000) exact += std::pow((long double)p, -2.0L);
  CHECK(prime_tail_bound(small, 1000, 1.0) >= double(exact));
  CHECK(prime_tail_bound(small, 1000, 1.0) < 1.5 * double(exact));
}

TEST_CASE("interval union") {
  const std::vector<Interval> m = merge_intervals({{3, 4}, {0, 1}, {0.5, 2}, {4, 5}});
  REQUIRE(m.size() == 2);
  CHECK(m[0].lo == 0);
  CHECK(m[0].hi == 2);
  CHECK(m[1].lo == 3);
  CHECK(m[1].hi == 5);
  CHECK(total_length(m) == 4.0);
  CHECK(contains(m, 1.5));
  CHECK(contains(m, 5.0));
  CHECK_FALSE(contains(m, 2.5));
}

TEST_CASE("set B_N from square-free m") {
  const PrimeTable pt = sieve(1000);
  const SetB b = build_B_N(pt, 10000, 0.5, 1.0, 1.0);
  // Square-free m < 100.
  CHECK(b.squarefree_terms == 61);
  CHECK(b.width == doctest::Approx(2e-4));
  CHECK(b.measure <= b.squarefree_terms * b.width + 1e-15);
  // m = 6 contributes x = 1/2 + 1/3.
  CHECK(contains(b.intervals, 5.0 / 6.0 + 1e-4));
  CHECK_THROWS_AS(build_B_N(pt, 10000, 1.5, 1.0, 1.0), Error);
}

TEST_CASE("singularity experiment at small scale") {
  SingularityConfig c;
  c.N = 10000;
  c.trials = 20000;
  c.threads = 2;
  const SingularityReport a = singularity_experiment(c);
  CHECK(a.mc_prob > 0.0);
  CHECK(a.mc_prob < 1.0);
  CHECK(a.B_measure > 0.0);
  c.threads = 1;
  const SingularityReport b = singularity_experiment(c);
  CHECK(a.mc_prob == b.mc_prob);
  CHECK(a.max_bin_mass == b.max_bin_mass);
}

TEST_CASE("coefficient hypotheses") {
  const PrimeTable pt = sieve(1000000);
  std::vector<double> power(pt.primes().size()), one(power.size(), 1.0), zero(power.size(), 0.0);
  for (std::size_t i = 0; i < power.size(); ++i) power[i] = 1.0 / pt.primes()[i];

  const ApCheck a = general_ap_check(pt, power, {1.0, 1.0});
  CHECK(a.divergent_support);
  CHECK(a.absolutely_summable);
  CHECK(a.power_tail);

  const ApCheck b = general_ap_check(pt, one, {1.0, 0.0});
  CHECK(b.divergent_support);
  CHECK_FALSE(b.absolutely_summable);

  const ApCheck c = general_ap_check(pt, zero, {0.0, 0.0});
  CHECK_FALSE(c.divergent_support);
  CHECK(c.absolutely_summable);
}
