#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <numeric>

#include "drs/error.hpp"
#include "drs/exact_dist.hpp"

using namespace drs;

namespace {

// All 2^N indicator patterns, grouped by value rounded to 1e-12.
std::map<long long, double> brute_law(const SeriesParams& p, int N) {
  std::map<long long, double> law;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    double v = 0.0, pr = 1.0;
    for (int n = 1; n <= N; ++n) {
      const double q = std::pow(n, -p.beta);
      if (mask & (1u << (n - 1))) {
        v += std::pow(n, -p.s);
        pr *= q;
      } else {
        pr *= 1 - q;
      }
    }
    if (pr > 0) law[std::llround(v * 1e12)] += pr;
  }
  return law;
}

}  // namespace

TEST_CASE("enumeration agrees with brute force over all patterns") {
  for (auto p : {SeriesParams{2.0, 1.0}, SeriesParams{1.0, 0.5}, SeriesParams{0.6, 1.0}}) {
    const int N = 12;
    const AtomicDistribution d = enumerate(p, N);
    const auto law = brute_law(p, N);
    REQUIRE(d.size() == law.size());
    std::size_t i = 0;
    for (const auto& [key, prob] : law) {
      CHECK(std::llround(d.values[i] * 1e12) == key);
      CHECK(d.probs[i] == doctest::Approx(prob).epsilon(1e-12));
      ++i;
    }
  }
}

TEST_CASE("atoms are sorted and mass sums to one") {
  const AtomicDistribution d = enumerate({1.0, 1.0}, 20);
  for (std::size_t i = 1; i < d.size(); ++i) CHECK(d.values[i] > d.values[i - 1]);
  long double total = 0.0L;
  for (double q : d.probs) total += q;
  CHECK(double(total) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(d.values.front() == 1.0);  // I_1 = 1 always when beta > 0
}

TEST_CASE("moments match independent sums") {
  for (auto [s, beta] : {std::pair{1.0, 1.0}, {2.2, 1.0}, {1.0, 0.5}}) {
    const AtomicDistribution d = enumerate({s, beta}, 18);
    double mean = 0.0, var = 0.0;
    for (int n = 1; n <= 18; ++n) {
      const double q = std::pow(n, -beta), w = std::pow(n, -s);
      mean += q * w;
      var += q * (1 - q) * w * w;
    }
    CHECK(exact_moment(d, 1) == doctest::Approx(mean).epsilon(1e-13));
    CHECK(exact_moment(d, 2) - mean * mean == doctest::Approx(var).epsilon(1e-10));
    CHECK(std::accumulate(d.probs.begin(), d.probs.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("characteristic function equals the product of two-point transforms") {
  const SeriesParams p{0.6, 1.0};
  const AtomicDistribution d = enumerate(p, 16);
  for (double t : {0.1, 1.0, 7.3, 100.0}) {
    std::complex<double> prod = 1.0;
    for (int n = 1; n <= 16; ++n) {
      const double q = std::pow(n, -p.beta);
      prod *= (1 - q) + q * std::exp(std::complex<double>(0, -2 * M_PI * t * std::pow(n, -p.s)));
    }
    const std::complex<double> z = exact_charfn(d, t);
    CHECK(std::abs(z - prod) < 1e-12);
  }
}

TEST_CASE("interval probabilities are closed on both ends") {
  const AtomicDistribution d = enumerate({1.0, 1.0}, 3);
  // Atoms: 1 (1/3), 1 + 1/3 (1/6), 1.5 (1/3), 1 + 1/2 + 1/3 (1/6).
  REQUIRE(d.size() == 4);
  CHECK(interval_prob(d, 1.0, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(interval_prob(d, 1.0, 1.5) == doctest::Approx(5.0 / 6.0));
  CHECK(interval_prob(d, 1.6, 1.7) == 0.0);
  CHECK(interval_prob(d, 0.0, 10.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(interval_prob(d, 2.0, 1.0), Error);
}

TEST_CASE("log-product atoms") {
  const AtomicDistribution d = enumerate({1.0, 1.0, Variant::LogProduct}, 10);
  CHECK(d.values.front() == 0.0);
  CHECK(d.values.back() == doctest::Approx(std::log(10.0)).epsilon(1e-14));
  CHECK(exact_moment(d, 1) > 0.0);
  CHECK_THROWS_AS(exact_moment(d, 0), Error);
}

TEST_CASE("enumeration limits") {
  CHECK_THROWS_AS(enumerate({1.0, 1.0}, kMaxExactN + 1), Error);
  CHECK_THROWS_AS(enumerate({1.0, 1.0}, 0), Error);
  try {
    enumerate({1.0, 1.0, Variant::PrimesOnly}, 10);
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
}

TEST_CASE("interval scaling exponent for s = 2") {
  const AtomicDistribution d = enumerate({2.0, 1.0}, 20);
  std::vector<double> eps;
  for (int k = 4; k <= 10; ++k) eps.push_back(std::ldexp(1.0, -k));
  const SlopeFit f = interval_scaling_fit(d, 1.0, eps);
  CHECK(f.slope == doctest::Approx(0.5).epsilon(0.2));
}
