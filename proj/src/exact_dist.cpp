#include "drs/exact_dist.hpp"

#include <algorithm>
#include <cmath>

#include "drs/error.hpp"

namespace drs {

namespace {

constexpr double kMergeTol = 1e-14;

// t·x modulo 1, keeping the rounding error of the product.
double turns(double t, double x) {
  const double hi = t * x;
  const double lo = std::fma(t, x, -hi);
  const double f = hi - std::floor(hi);
  return f + lo;
}

}  // namespace

AtomicDistribution enumerate(const SeriesParams& params, std::int64_t N) {
  validate(params);
  if (N < 1) {
    fail(ErrorKind::Domain, "enumerate: N must be >= 1");
  }
  if (N > kMaxExactN) {
    fail(ErrorKind::Capacity, "enumerate: N must be <= 25");
  }
  if (params.variant == Variant::PrimesOnly) {
    fail(ErrorKind::Unsupported, "enumerate: the prime series is not supported");
  }
  std::vector<double> values{0.0};
  std::vector<double> probs{1.0};
  std::vector<double> nv, np, mv, mp;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double x = static_cast<double>(n);
    const double p = std::pow(x, -params.beta);
    double w = 0.0;
    if (params.variant == Variant::LogProduct) {
      w = n < 2 ? 0.0 : -std::log1p(-1.0 / x);
    } else {
      w = std::pow(x, -params.s);
    }
    if (p >= 1.0 || w == 0.0) {
      if (p >= 1.0) {
        for (double& v : values) v += w;
      }
      continue;
    }
    // Both shifted copies are sorted; merge them.
    const std::size_t m = values.size();
    mv.clear();
    mp.clear();
    mv.reserve(2 * m);
    mp.reserve(2 * m);
    std::size_t i = 0, j = 0;
    while (i < m || j < m) {
      const bool take_miss = j >= m || (i < m && values[i] <= values[j] + w);
      if (take_miss) {
        mv.push_back(values[i]);
        mp.push_back(probs[i] * (1.0 - p));
        ++i;
      } else {
        mv.push_back(values[j] + w);
        mp.push_back(probs[j] * p);
        ++j;
      }
    }
    nv.clear();
    np.clear();
    nv.reserve(mv.size());
    np.reserve(mv.size());
    for (std::size_t k = 0; k < mv.size(); ++k) {
      if (!nv.empty() &&
          mv[k] - nv.back() <= kMergeTol * std::max(1.0, std::abs(mv[k]))) {
        np.back() += mp[k];
      } else {
        nv.push_back(mv[k]);
        np.push_back(mp[k]);
      }
    }
    values.swap(nv);
    probs.swap(np);
  }
  AtomicDistribution d;
  d.params = params;
  d.N = N;
  d.values = std::move(values);
  d.probs = std::move(probs);
  return d;
}

double exact_moment(const AtomicDistribution& dist, int r) {
  if (r < 1) {
    fail(ErrorKind::Domain, "exact_moment: r must be >= 1");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc += dist.probs[i] * std::pow(dist.values[i], r);
  }
  return acc.value();
}

std::complex<double> exact_charfn(const AtomicDistribution& dist, double t) {
  CompensatedSum re, im;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double a = -2.0 * kPi * turns(t, dist.values[i]);
    re += dist.probs[i] * std::cos(a);
    im += dist.probs[i] * std::sin(a);
  }
  return {re.value(), im.value()};
}

double interval_prob(const AtomicDistribution& dist, double a, double b) {
  if (!(a <= b)) {
    fail(ErrorKind::Domain, "interval_prob: need a <= b");
  }
  const auto lo = std::lower_bound(dist.values.begin(), dist.values.end(), a);
  const auto hi = std::upper_bound(dist.values.begin(), dist.values.end(), b);
  CompensatedSum acc;
  for (auto it = lo; it < hi; ++it) {
    acc += dist.probs[static_cast<std::size_t>(it - dist.values.begin())];
  }
  return acc.value();
}

SlopeFit interval_scaling_fit(const AtomicDistribution& dist, double lo,
                              const std::vector<double>& epsilons) {
  std::vector<std::pair<double, double>> pts;
  for (double eps : epsilons) {
    if (!(eps > 0.0)) {
      fail(ErrorKind::Domain, "interval_scaling_fit: epsilons must be positive");
    }
    const double p = interval_prob(dist, lo, lo + eps);
    if (p > 0.0) {
      pts.emplace_back(std::log(eps), std::log(p));
    }
  }
  return fit_slope(pts);
}

}  // namespace drs
