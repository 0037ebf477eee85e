#pragma once

// Fixed-width histograms and the four-panel density figure.

#include <cstdint>
#include <string>
#include <vector>

#include "drs/series_model.hpp"

namespace drs {

struct Histogram {
  double bin_width = 0.0;
  std::int64_t first_bin = 0;       // bin i covers [i w, (i+1) w)
  std::vector<std::int64_t> counts;  // bins first_bin .. first_bin + size - 1
  std::int64_t total = 0;

  double bin_left(std::size_t i) const;
  double density(std::size_t i) const;
  double integral() const;     // Σ density · width
  double max_density() const;
  double min_nonempty_left() const;
};

Histogram histogram(const std::vector<double>& values, double bin_width);

/// CSV with columns bin_left,density covering every bin from the first to
/// the last nonempty one.
std::string histogram_csv(const Histogram& h);

struct Figure1Config {
  std::int64_t N = 10'000;
  std::int64_t samples = 1'000'000;
  double bin_width = 1e-3;
  double beta = 1.0;
  std::vector<double> s_values{0.6, 1.0, 1.4, 2.2};
  std::uint64_t seed = 1;
  int threads = 0;
};

struct Figure1Panel {
  double s = 0.0;
  Histogram hist;
  std::vector<double> samples;  // kept for refinement checks
  double mean = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  double tail_mean_bound = 0.0;
};

/// Panel i samples stream i of `seed`.
std::vector<Figure1Panel> figure1(const Figure1Config& config);

/// File name of a panel, e.g. figure1_s0.6.csv.
std::string figure1_file_name(double s);

}  // namespace drs
