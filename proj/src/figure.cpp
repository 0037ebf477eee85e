#include "drs/figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "drs/error.hpp"
#include "drs/numerics.hpp"
#include "drs/sampler.hpp"

namespace drs {

double Histogram::bin_left(std::size_t i) const {
  return static_cast<double>(first_bin + static_cast<std::int64_t>(i)) * bin_width;
}

double Histogram::density(std::size_t i) const {
  return static_cast<double>(counts[i]) / (static_cast<double>(total) * bin_width);
}

double Histogram::integral() const {
  CompensatedSum acc;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    acc += density(i) * bin_width;
  }
  return acc.value();
}

double Histogram::max_density() const {
  double best = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    best = std::max(best, density(i));
  }
  return best;
}

double Histogram::min_nonempty_left() const {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) return bin_left(i);
  }
  return std::nan("");
}

Histogram histogram(const std::vector<double>& values, double bin_width) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    fail(ErrorKind::Domain, "histogram: bin width must be positive");
  }
  if (values.empty()) {
    fail(ErrorKind::Domain, "histogram: no values");
  }
  auto index = [&](double v) {
    if (!std::isfinite(v)) {
      fail(ErrorKind::Domain, "histogram: non-finite value");
    }
    return static_cast<std::int64_t>(std::floor(v / bin_width));
  };
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  Histogram h;
  h.bin_width = bin_width;
  h.first_bin = index(*lo);
  const std::int64_t span = index(*hi) - h.first_bin + 1;
  if (span > (std::int64_t{1} << 28)) {
    fail(ErrorKind::Capacity, "histogram: more than 2^28 bins");
  }
  h.counts.assign(static_cast<std::size_t>(span), 0);
  for (double v : values) {
    ++h.counts[static_cast<std::size_t>(index(v) - h.first_bin)];
  }
  h.total = static_cast<std::int64_t>(values.size());
  return h;
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_left,density\n";
  char line[80];
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", h.bin_left(i), h.density(i));
    out += line;
  }
  return out;
}

std::vector<Figure1Panel> figure1(const Figure1Config& config) {
  if (config.s_values.empty()) {
    fail(ErrorKind::Domain, "figure1: no s values");
  }
  std::vector<Figure1Panel> panels;
  for (std::size_t i = 0; i < config.s_values.size(); ++i) {
    const SeriesParams params{config.s_values[i], config.beta, Variant::AllIntegers};
    validate(params);
    const RngStream rng(config.seed, i);
    SampleBatch batch = sample_series(params, config.N, config.samples, rng, config.threads);
    Figure1Panel panel;
    panel.s = params.s;
    panel.hist = histogram(batch.values, config.bin_width);
    const auto [lo, hi] = std::minmax_element(batch.values.begin(), batch.values.end());
    panel.min_value = *lo;
    panel.max_value = *hi;
    panel.mean = compensated_sum(batch.values) / static_cast<double>(batch.values.size());
    if (classify(params) != ConvergenceClass::Diverges) {
      panel.tail_mean_bound = tail_mean_bound(params, config.N);
    } else {
      panel.tail_mean_bound = std::numeric_limits<double>::infinity();
    }
    panel.samples = std::move(batch.values);
    panels.push_back(std::move(panel));
  }
  return panels;
}

std::string figure1_file_name(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "figure1_s%g.csv", s);
  return buf;
}

}  // namespace drs
