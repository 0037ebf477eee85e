#include <doctest.h>

#include <cmath>

#include "drs/error.hpp"
#include "drs/series_model.hpp"

using namespace drs;

namespace {

// Σ_{n=N+1}^{M} n^{-a} in long double plus the integral bracket beyond M.
long double brute_tail(double a, long long N, long long M) {
  long double sum = 0.0L;
  for (long long n = M; n > N; --n) sum += std::pow(static_cast<long double>(n), -a);
  return sum;
}

}  // namespace

TEST_CASE("classification regions") {
  CHECK(classify({1.0, 1.0}) == ConvergenceClass::ConvergesAC_Candidate);
  CHECK(classify({0.6, 1.0}) == ConvergenceClass::ConvergesAC_Candidate);
  CHECK(classify({1.0, 0.5}) == ConvergenceClass::ConvergesAC_Candidate);
  CHECK(classify({0.5, 0.5}) == ConvergenceClass::Diverges);
  CHECK(classify({0.2, 0.3}) == ConvergenceClass::Diverges);
  CHECK(classify({1.0, 1.5}) == ConvergenceClass::AtomicSingular);
  CHECK(classify({0.1, 1.2}) == ConvergenceClass::AtomicSingular);
}

TEST_CASE("validation") {
  CHECK_NOTHROW(validate({1.0, 1.0, Variant::LogProduct}));
  CHECK_THROWS_AS(validate({0.0, 1.0}), Error);
  CHECK_THROWS_AS(validate({1.0, -1.0}), Error);
  CHECK_THROWS_AS(validate({INFINITY, 1.0}), Error);
  try {
    validate({2.0, 1.0, Variant::LogProduct});
    FAIL("expected InvalidVariant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidVariant);
  }
}

TEST_CASE("variant names round trip") {
  for (Variant v : {Variant::AllIntegers, Variant::PrimesOnly, Variant::LogProduct}) {
    CHECK(parse_variant(to_string(v)) == v);
  }
  CHECK_THROWS_AS(parse_variant("odd"), Error);
}

TEST_CASE("power_tail brackets the true tail") {
  for (double a : {1.5, 2.0, 3.0, 4.4}) {
    for (long long N : {1LL, 10LL, 100LL}) {
      const long long M = 2000000;
      const long double head = brute_tail(a, N, M);
      const TailBracket rest = power_tail(a, static_cast<double>(M));
      const TailBracket b = power_tail(a, static_cast<double>(N));
      CHECK(b.lower <= static_cast<double>(head + rest.upper) * (1 + 1e-12));
      CHECK(b.upper >= static_cast<double>(head + rest.lower) * (1 - 1e-12));
      CHECK(b.lower <= b.upper);
    }
  }
  CHECK_THROWS_AS(power_tail(1.0, 10.0), Error);
}

TEST_CASE("tail_mean_bound dominates the expected tail") {
  for (auto [s, beta] : {std::pair{1.0, 1.0}, {0.6, 1.0}, {2.2, 1.0}, {1.0, 0.5}}) {
    const SeriesParams p{s, beta};
    const long long N = 1000;
    const double a = s + beta;
    const long double exact =
        brute_tail(a, N, 2000000) + power_tail(a, 2000000.0).lower;
    const double bound = tail_mean_bound(p, N);
    CHECK(bound >= static_cast<double>(exact));
    CHECK(bound <= static_cast<double>(exact) * 1.001);
  }
}

TEST_CASE("dyadic blocks") {
  const DyadicBlock b = dyadic_block(4);
  CHECK(b.first == 17);
  CHECK(b.last == 32);

  const BlockDecomposition d = make_blocks({1.0, 1.0}, 0, 1e6);
  CHECK(d.delta_q == doctest::Approx(1.0 / 3.0));
  CHECK(d.Delta == doctest::Approx(1.0));
  CHECK(d.m_q == static_cast<int>(std::floor(std::log2(100.0))));
  CHECK(d.M == static_cast<int>(std::floor(std::log2(1e6))));
  REQUIRE(d.blocks.size() == static_cast<std::size_t>(d.M - d.m_q));
  for (std::size_t i = 1; i < d.blocks.size(); ++i) {
    CHECK(d.blocks[i].first == d.blocks[i - 1].last + 1);
  }

  const BlockDecomposition h = make_blocks({1.0, 0.5}, 0, 1e6);
  CHECK(h.delta_q == doctest::Approx(1.0 / 3.0));
  CHECK(h.Delta == doctest::Approx(0.5));
}
