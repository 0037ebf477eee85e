#include <doctest.h>

#include <cmath>

#include "drs/error.hpp"
#include "drs/figure.hpp"

using namespace drs;

TEST_CASE("histogram bins and density") {
  const Histogram h = histogram({0.05, 0.15, 0.151, 0.35, -0.05}, 0.1);
  CHECK(h.first_bin == -1);
  REQUIRE(h.counts.size() == 5);
  CHECK(h.counts[0] == 1);
  CHECK(h.counts[1] == 1);
  CHECK(h.counts[2] == 2);
  CHECK(h.counts[3] == 0);
  CHECK(h.counts[4] == 1);
  CHECK(h.density(2) == doctest::Approx(2.0 / (5 * 0.1)));
  CHECK(h.integral() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h.min_nonempty_left() == doctest::Approx(-0.1));
  CHECK(histogram_csv(h).rfind("bin_left,density\n", 0) == 0);
  CHECK_THROWS_AS(histogram({1.0}, 0.0), Error);
  CHECK_THROWS_AS(histogram({}, 0.1), Error);
  CHECK_THROWS_AS(histogram({0.0, 1e9}, 1e-3), Error);
}

TEST_CASE("small figure run") {
  Figure1Config c;
  c.N = 1000;
  c.samples = 20000;
  c.threads = 2;
  const std::vector<Figure1Panel> a = figure1(c);
  REQUIRE(a.size() == 4);
  for (const Figure1Panel& p : a) {
    CHECK(p.hist.integral() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p.min_value >= 1.0);
    CHECK(std::abs(p.hist.min_nonempty_left() - 1.0) <= c.bin_width);
  }
  c.threads = 1;
  const std::vector<Figure1Panel> b = figure1(c);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].samples == b[i].samples);
  CHECK(figure1_file_name(0.6) == "figure1_s0.6.csv");
  CHECK(figure1_file_name(1.0) == "figure1_s1.csv");
}

TEST_CASE("s = 2.2 is spiky next to s = 0.6") {
  Figure1Config c;
  c.samples = 200000;
  c.s_values = {0.6, 2.2};
  const std::vector<Figure1Panel> p = figure1(c);
  CHECK(p[1].hist.max_density() > 5.0 * p[0].hist.max_density());
  CHECK(p[0].hist.min_nonempty_left() >= 1.0);
}
