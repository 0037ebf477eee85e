#include <doctest.h>

#include <cmath>
#include <vector>

#include "drs/error.hpp"
#include "drs/numerics.hpp"
#include "drs/sampler.hpp"

using namespace drs;

TEST_CASE("indicator frequencies follow n^-beta") {
  const SeriesParams p{1.0, 0.5};
  const int reps = 4000;
  std::vector<int> hits(50, 0);
  RngStream rng(3, 0);
  for (int r = 0; r < reps; ++r) {
    const IndicatorPath path = sample_indicators(p, 50, rng);
    for (int n = 1; n <= 50; ++n) hits[n - 1] += path.at(n) ? 1 : 0;
  }
  CHECK(hits[0] == reps);
  for (int n : {2, 5, 17, 50}) {
    const double q = std::pow(n, -0.5);
    const double sd = std::sqrt(q * (1 - q) / reps);
    CHECK(std::abs(hits[n - 1] / double(reps) - q) < 5 * sd);
  }
}

TEST_CASE("for_each_hit matches independent Bernoulli rates") {
  const int count = 200, reps = 20000;
  std::vector<int> hits(count, 0);
  RngStream rng(9, 2);
  auto prob = [](std::int64_t i) { return 1.0 / (i + 2.0); };
  for (int r = 0; r < reps; ++r) {
    std::int64_t last = -1;
    for_each_hit(count, prob, rng, [&](std::int64_t i) {
      CHECK(i > last);
      last = i;
      ++hits[i];
    });
  }
  for (int i : {0, 1, 10, 100, 199}) {
    const double q = prob(i);
    CHECK(std::abs(hits[i] / double(reps) - q) < 5 * std::sqrt(q * (1 - q) / reps));
  }
}

TEST_CASE("record indicators from uniforms") {
  RngStream rng(1, 1);
  const RecordPath r = records_from_uniforms(30, rng);
  REQUIRE(r.uniforms.size() == 30);
  double m = -1.0;
  for (int n = 1; n <= 30; ++n) {
    const double u = r.uniforms[n - 1];
    CHECK(r.indicators.at(n) == (u > m));
    m = std::max(m, u);
    CHECK(r.running_max[n - 1] == m);
  }
  for (int j = 2; j <= 30; ++j) {
    CHECK(r.ratios[j - 2] == r.running_max[j - 2] / r.running_max[j - 1]);
  }
}

TEST_CASE("sample mean and variance match the moments") {
  for (auto [s, beta] : {std::pair{1.0, 1.0}, {0.6, 1.0}, {2.2, 1.0}, {1.0, 0.5}}) {
    const SeriesParams p{s, beta};
    const std::int64_t N = 500, n = 40000;
    double mean = 0.0, var = 0.0;
    for (int k = 1; k <= N; ++k) {
      const double q = std::pow(k, -beta), w = std::pow(k, -s);
      mean += q * w;
      var += q * (1 - q) * w * w;
    }
    const SampleBatch b = sample_series(p, N, n, RngStream(5, 0), 2);
    REQUIRE(b.values.size() == static_cast<std::size_t>(n));
    const double m = compensated_sum(b.values) / n;
    CHECK(std::abs(m - mean) < 5 * std::sqrt(var / n));
    for (double v : b.values) {
      REQUIRE(v >= 1.0);
      REQUIRE(v <= max_truncated_value(p, N) + 1e-12);
    }
    CHECK_FALSE(b.divergent);
  }
}

TEST_CASE("samples do not depend on the thread count") {
  const SeriesParams p{0.6, 1.0};
  const RngStream rng(11, 4);
  const SampleBatch a = sample_series(p, 1000, 150000, rng, 1);
  const SampleBatch b = sample_series(p, 1000, 150000, rng, 8);
  CHECK(a.values == b.values);
  const SampleBatch c = sample_series(p, 1000, 150000, RngStream(12, 4), 1);
  CHECK(a.values != c.values);
}

TEST_CASE("prime and log-product variants") {
  const SampleBatch pr = sample_series({1.0, 1.0, Variant::PrimesOnly}, 100, 1000,
                                       RngStream(1, 0), 1);
  for (double v : pr.values) CHECK(v <= max_truncated_value({1.0, 1.0, Variant::PrimesOnly}, 100) + 1e-12);
  // The prime sum has no term for n = 1.
  CHECK(*std::min_element(pr.values.begin(), pr.values.end()) < 1.0);

  const SampleBatch lp = sample_series({1.0, 1.0, Variant::LogProduct}, 100, 1000,
                                       RngStream(1, 0), 1);
  for (double v : lp.values) {
    CHECK(v >= 0.0);
    CHECK(v <= std::log(100.0) + 1e-12);
  }
}

TEST_CASE("divergent parameters are flagged") {
  const SampleBatch b = sample_series({0.4, 0.5}, 100, 10, RngStream(1, 0), 1);
  CHECK(b.divergent);
  CHECK_THROWS_AS(sample_series({1.0, 1.0}, 0, 10, RngStream(1, 0)), Error);
}

TEST_CASE("single-hit probability of dyadic blocks") {
  const SeriesParams p{1.0, 1.0};
  for (int k = 0; k <= 16; ++k) {
    // Π (1 - 1/n) over the block telescopes to 1/2.
    long double harmonic = 0.0L;
    for (long long m = 1LL << k; m < (1LL << (k + 1)); ++m) harmonic += 1.0L / m;
    CHECK(block_single_hit_prob(p, k) == doctest::Approx(double(0.5L * harmonic)).epsilon(1e-13));
    CHECK(block_single_hit_prob(p, k) >= 0.5 * kLog2);
  }
  CHECK_THROWS_AS(block_single_hit_prob({1.0, 0.5}, 3), Error);
}

TEST_CASE("block conditional law") {
  for (int k : {1, 3, 8}) {
    const BlockConditional bc = block_conditional(k);
    const std::vector<double> probs = bc.probabilities();
    REQUIRE(probs.size() == static_cast<std::size_t>(bc.last() - bc.first() + 1));
    CHECK(compensated_sum(probs) == doctest::Approx(1.0).epsilon(1e-14));
    long double z = 0.0L;
    for (std::int64_t n = bc.first(); n <= bc.last(); ++n) z += 1.0L / (n - 1);
    for (std::int64_t n = bc.first(); n <= bc.last(); ++n) {
      CHECK(bc.prob(n) == doctest::Approx(double(1.0L / ((n - 1) * z))).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(block_conditional(30).probabilities(), Error);
}
