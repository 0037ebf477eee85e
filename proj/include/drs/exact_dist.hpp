#pragma once

// Exact law of the truncated sum Σ_{n<=N} I_n / n^s as a list of atoms.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "drs/numerics.hpp"
#include "drs/series_model.hpp"

namespace drs {

inline constexpr int kMaxExactN = 25;

struct AtomicDistribution {
  SeriesParams params;
  std::int64_t N = 0;
  std::vector<double> values;  // strictly increasing
  std::vector<double> probs;   // positive, summing to 1
  std::size_t size() const noexcept { return values.size(); }
};

/// Convolution of the two-point laws {0: 1 - n^{-β}, n^{-s}: n^{-β}} for
/// n = 1..N in ascending order. Atoms closer than 1e-14 (relative) are merged.
AtomicDistribution enumerate(const SeriesParams& params, std::int64_t N);

/// Σ prob · value^r.
double exact_moment(const AtomicDistribution& dist, int r);

/// Σ prob · exp(-2πi t value).
std::complex<double> exact_charfn(const AtomicDistribution& dist, double t);

/// Mass of the atoms in the closed interval [a, b].
double interval_prob(const AtomicDistribution& dist, double a, double b);

/// Log-log fit of P(S ∈ [lo, lo + ε]) against ε.
SlopeFit interval_scaling_fit(const AtomicDistribution& dist, double lo,
                              const std::vector<double>& epsilons);

}  // namespace drs
