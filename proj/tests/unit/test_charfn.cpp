#include <doctest.h>

#include <cmath>
#include <complex>

#include "drs/charfn.hpp"
#include "drs/error.hpp"
#include "drs/exact_dist.hpp"

using namespace drs;

namespace {

long double direct_product(double s, double beta, double t, long long N) {
  long double prod = 1.0L;
  for (long long n = 1; n <= N; ++n) {
    const long double p = std::pow(static_cast<long double>(n), -beta);
    const long double w = std::pow(static_cast<long double>(n), -s);
    const long double sn = std::sin(3.141592653589793238462643383279503L * t * w);
    prod *= 1.0L - 4.0L * p * (1.0L - p) * sn * sn;
  }
  return prod;
}

}  // namespace

TEST_CASE("product matches a direct long double product") {
  for (auto [s, beta] : {std::pair{1.0, 1.0}, {0.6, 1.0}, {2.2, 1.0}, {1.0, 0.5}}) {
    for (double t : {0.3, 3.0, 41.0, 1000.0}) {
      const ProductValue v = modulus_sq_product({s, beta}, t, 3000);
      const double ref = static_cast<double>(direct_product(s, beta, t, 3000));
      CHECK(v.value == doctest::Approx(ref).epsilon(1e-10));
      CHECK(std::exp(v.log_value) == doctest::Approx(v.value).epsilon(1e-12));
    }
  }
}

TEST_CASE("product matches the exact law") {
  const AtomicDistribution d = enumerate({1.0, 0.5}, 14);
  for (double t : {0.1, 10.0, 1000.0}) {
    const double m2 = std::norm(exact_charfn(d, t));
    CHECK(std::abs(m2 - modulus_sq_product({1.0, 0.5}, t, 14).value) < 1e-12);
  }
}

TEST_CASE("vanishing factor") {
  // n = 2, beta = 1: p = 1/2 and sin^2(pi/2) = 1.
  const ProductValue v = modulus_sq_product({1.0, 1.0}, 1.0, 5);
  CHECK(v.value == 0.0);
  CHECK(std::isinf(v.log_value));
  CHECK(v.log_value < 0);
}

TEST_CASE("product is even in t and equals 1 at t = 0") {
  CHECK(modulus_sq_product({1.0, 1.0}, 0.0, 100).value == 1.0);
  CHECK(modulus_sq_product({1.0, 1.0}, -7.5, 100).value ==
        modulus_sq_product({1.0, 1.0}, 7.5, 100).value);
}

TEST_CASE("truncation bound dominates the dropped factors") {
  for (auto [s, beta] : {std::pair{1.0, 1.0}, {0.6, 1.0}, {1.0, 0.5}}) {
    const SeriesParams p{s, beta};
    for (double t : {2.5, 20.5}) {
      const long long big = 1 << 18;
      const double tail = std::abs(modulus_sq_product(p, t, big).log_value -
                                   modulus_sq_product(p, t, 4096).log_value);
      CHECK(tail <= truncation_bound(p, t, 4096));
    }
  }
  const SeriesParams lp{1.0, 1.0, Variant::LogProduct};
  const double tail = std::abs(modulus_sq_product(lp, 3.0, 1 << 18).log_value -
                               modulus_sq_product(lp, 3.0, 1024).log_value);
  CHECK(tail <= truncation_bound(lp, 3.0, 1024));
}

TEST_CASE("auto truncation") {
  const SeriesParams p{1.0, 1.0};
  const std::int64_t N = auto_truncation(p, 100.0, 1e-3);
  CHECK((N & (N - 1)) == 0);
  CHECK(N >= 100);
  CHECK(truncation_bound(p, 100.0, N) <= 1e-3);
  if (N > 128) CHECK(truncation_bound(p, 100.0, N / 2) > 1e-3);
  CHECK_THROWS_AS(auto_truncation(p, 100.0, 0.0), Error);
  CHECK_THROWS_AS(auto_truncation({0.6, 1.0}, 1e9, 1e-12), Error);
}

TEST_CASE("log grid") {
  const std::vector<double> g = log_grid(10.0, 1e4, 5);
  REQUIRE(g.size() == 16);
  CHECK(g.front() == 10.0);
  CHECK(g.back() == doctest::Approx(1e4).epsilon(1e-14));
  CHECK(g[5] == doctest::Approx(100.0).epsilon(1e-14));
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 5), Error);
}

TEST_CASE("profile is thread invariant and its csv has a header") {
  const SeriesParams p{1.0, 1.0};
  const std::vector<double> g = log_grid(1.0, 1e3, 4);
  const CharFnProfile a = charfn_profile(p, g, 1e-3, 1);
  const CharFnProfile b = charfn_profile(p, g, 1e-3, 4);
  CHECK(profile_csv(a) == profile_csv(b));
  CHECK(profile_csv(a).rfind("t,modulus,trunc_error,N_used\n", 0) == 0);
  for (const ProfilePoint& q : a.points) {
    CHECK(q.modulus >= 0.0);
    CHECK(q.modulus <= 1.0);
    CHECK(q.trunc_error <= 1e-3);
  }
}

TEST_CASE("summation by parts equals the direct weighted sum") {
  for (double beta : {1.0, 0.5}) {
    for (int k : {0, 2, 6, 10}) {
      const DyadicBlock blk = dyadic_block(k);
      const double t = 1234.5;
      long double direct = 0.0L;
      for (std::int64_t n = blk.first; n <= blk.last; ++n) {
        const long double w = std::pow((long double)n, -beta) - std::pow((long double)n, -2 * beta);
        direct += w * std::cos(2 * 3.141592653589793238462643383279503L * t / n);
      }
      CHECK(std::abs(exp_sum_by_parts(t, 1.0, beta, blk) - double(direct)) < 1e-12);
    }
  }
}

TEST_CASE("direct exponential sums") {
  const PhaseSpec f{PhaseKind::Power, 12.0, 1.0};
  CHECK(std::abs(exp_sum_direct(f, 5, 4)) == 0.0);
  // t = 12, n | 12: f(n) is an integer.
  CHECK(f.turns(3) == 0.0);
  CHECK(f.turns(5) == doctest::Approx(0.4).epsilon(1e-14));
  std::complex<double> ref = 0.0;
  for (int n = 1; n <= 40; ++n) ref += std::exp(std::complex<double>(0, 2 * M_PI * 12.0 / n));
  CHECK(std::abs(exp_sum_direct(f, 1, 40) - ref) < 1e-12);
  CHECK(block_weight(1.0, 4) == doctest::Approx(0.25 - 0.0625));
}

TEST_CASE("van der Corput bound formula") {
  const VdcParams vp{1, 64.0, 1000.0, 8.0};
  // Q = 2, 4Q - 2 = 6.
  const double ref = 8.0 * (std::pow(1000.0, 1.0 / 6) * std::pow(64.0, 1.0 - 3.0 / 6) + 64.0 / 1000.0);
  CHECK(vdc_bound(vp, 64) == doctest::Approx(ref).epsilon(1e-14));
  CHECK_THROWS_AS(vdc_bound(vp, 65), Error);

  const VdcSweep sw = vdc_sweep(1.0, {1e3, 1e5}, 6, {0, 1, 2}, 8.0, 2);
  CHECK(sw.violations == 0);
  CHECK(sw.worst_ratio < 1.0);
  for (const VdcCase& c : sw.cases) {
    if (!c.trivial) CHECK(c.direct <= c.bound);
    if (c.trivial) CHECK(c.bound >= double(c.length));
  }
}

TEST_CASE("decay fit on a short grid") {
  const DecayFit f = decay_fit({1.0, 1.0}, log_grid(10.0, 1e4, 5), 0.05, 2);
  CHECK_FALSE(f.stretched);
  CHECK(f.fit.slope < -0.5);
  CHECK(f.fit.slope > -1.5);
  CHECK(f.calibration_end == doctest::Approx(100.0));
  for (const ProfilePoint& q : f.used) CHECK(q.t >= 100.0 * (1 - 1e-12));

  const DecayFit g = decay_fit({1.0, 0.5}, log_grid(10.0, 1e3, 5), 1.0, 2);
  CHECK(g.stretched);
  CHECK(g.fit.slope > 0.0);
  CHECK_THROWS_AS(decay_fit({1.0, 2.0}, log_grid(10.0, 1e3, 5), 0.1), Error);
}

TEST_CASE("Sobolev energy on [0, 1] against Simpson quadrature") {
  const SeriesParams p{1.0, 1.0};
  const SobolevEnergy e = sobolev_energy(p, 0.25, 10.0, 1e-4, 1 << 12, 2);
  REQUIRE(e.decades.size() == 2);
  const int m = 2000;
  long double acc = 0.0L;
  for (int i = 0; i <= m; ++i) {
    const double t = double(i) / m;
    const double wgt = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
    acc += wgt * direct_product(1.0, 1.0, t, 1 << 14) * std::pow(t, 0.5);
  }
  const double simpson = 2.0 * double(acc) / (3.0 * m);
  CHECK(e.decades[0].integral == doctest::Approx(simpson).epsilon(2e-3));
  CHECK(e.energy == doctest::Approx(e.decades.back().cumulative));
  CHECK(e.energy > e.decades[0].integral);
  CHECK(e.energy <= 2.0 * std::pow(10.0, 1.5) / 1.5);
}
