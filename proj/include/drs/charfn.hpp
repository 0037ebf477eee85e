#pragma once

// |μ̂(t)|² as an infinite product with certified truncation, exponential sums
// over dyadic blocks, van der Corput bounds, decay fits and Sobolev energies.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "drs/numerics.hpp"
#include "drs/series_model.hpp"

namespace drs {

class PrimeTable;

struct ProductValue {
  double value = 1.0;       // Π_{n<=N} factor_n
  double log_value = 0.0;   // log of value; -inf when a factor vanishes
  double trunc_error = 0.0; // certified bound on |log Π_{n>N} factor_n|
};

/// Π_{n<=N} (1 - 4p(1-p) sin²(π t w_n)) with p = n^{-β} and w_n = n^{-s}
/// (or -log(1 - 1/n) for LogProduct), accumulated as compensated logs.
/// Negative t is mapped to |t|. PrimesOnly restricts n to primes.
ProductValue modulus_sq_product(const SeriesParams& params, double t, std::int64_t N,
                                const PrimeTable* primes = nullptr);

/// Certified bound on |log Π_{n>N} factor_n| alone.
double truncation_bound(const SeriesParams& params, double t, std::int64_t N);

inline constexpr std::int64_t kMaxAutoTruncation = std::int64_t{1} << 34;

/// Smallest power of two N >= ⌈t^{1/s}⌉ with truncation_bound <= tol.
std::int64_t auto_truncation(const SeriesParams& params, double t, double tol);

struct ProfilePoint {
  double t = 0.0;
  double modulus = 1.0;
  double log_modulus = 0.0;
  double trunc_error = 0.0;
  std::int64_t N_used = 1;
};

struct CharFnProfile {
  SeriesParams params;
  double tol = 0.0;
  std::vector<ProfilePoint> points;
};

/// points_per_decade log-spaced values from t_min to t_max inclusive.
std::vector<double> log_grid(double t_min, double t_max, int points_per_decade);

/// |μ̂| on a grid, each point truncated by auto_truncation(tol).
CharFnProfile charfn_profile(const SeriesParams& params, const std::vector<double>& grid,
                             double tol, int threads = 0);

std::string profile_csv(const CharFnProfile& profile);

enum class PhaseKind {
  Power,  // f(x) = t / x^s
  Log     // f(x) = -t log(1 - 1/x)
};

struct PhaseSpec {
  PhaseKind kind = PhaseKind::Power;
  double t = 0.0;
  double s = 1.0;
  /// f(n) modulo 1.
  double turns(std::int64_t n) const;
};

using Weights = std::function<double(std::int64_t)>;

/// Σ_{n=first}^{last} w_n exp(2πi f(n)); empty range gives 0, empty
/// weights mean w_n = 1.
std::complex<double> exp_sum_direct(const PhaseSpec& f, std::int64_t first,
                                    std::int64_t last, const Weights& weights = {});

/// w(n) = n^{-β} - n^{-2β}.
double block_weight(double beta, std::int64_t n);

/// Σ_{n∈J_k} w(n) cos 2π t/n^s through the Abel rearrangement
/// Σ_l a_l P_l + w(last) P_last with a_l = w(l) - w(l+1) and P_l the
/// partial cosine sums.
double exp_sum_by_parts(double t, double s, double beta, const DyadicBlock& block);

struct VdcParams {
  int q = 0;
  double N = 1.0;
  double F = 1.0;
  double c = 8.0;
  double Q() const { return std::ldexp(1.0, q); }
};

/// c (F^{1/(4Q-2)} N^{1-(q+2)/(4Q-2)} + N/F) for a sum over an interval of
/// `interval_length` integers inside (N, 2N].
double vdc_bound(const VdcParams& vp, std::int64_t interval_length);

struct VdcCase {
  double t = 0.0;
  int k = 0;
  int q = 0;
  std::int64_t length = 0;
  double direct = 0.0;  // |Σ e^{2πi f(n)}|
  double bound = 0.0;
  bool trivial = false;  // bound >= length, so no summation needed
};

struct VdcSweep {
  double s = 1.0;
  double c = 8.0;
  std::vector<VdcCase> cases;
  std::int64_t violations = 0;
  double worst_ratio = 0.0;  // max direct / bound
};

/// Full blocks and half blocks J_k, k <= k_max, for each t and q in `qs`.
VdcSweep vdc_sweep(double s, const std::vector<double>& ts, int k_max,
                   const std::vector<int>& qs, double c = 8.0, int threads = 0);

struct DecayFit {
  SlopeFit fit;
  bool stretched = false;  // β < 1: fit of log(-log|μ̂|) against log t
  std::vector<ProfilePoint> used;
  std::vector<double> dropped_t;  // modulus below 1e-300
  double calibration_end = 0.0;   // points below this t calibrate only
  double envelope_exponent = 0.0;
  double envelope_log_C = 0.0;
  std::int64_t envelope_violations = 0;
};

/// β = 1: log|μ̂| against log t, with the envelope
/// log|μ̂| <= (-1/s + 0.1) log t + log C, C fitted on the first decade.
/// β < 1: log(-log|μ̂|) against log t. The first decade is not fitted.
DecayFit decay_fit(const SeriesParams& params, const std::vector<double>& t_grid,
                   double tol, int threads = 0);

struct SobolevDecade {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double integral = 0.0;
  double cumulative = 0.0;
  std::int64_t points = 0;
  std::int64_t N_used = 0;
  double trunc_error = 0.0;
  bool converged = false;
};

struct SobolevEnergy {
  SeriesParams params;
  double gamma = 0.0;
  double T = 0.0;
  double energy = 0.0;  // 2 ∫_0^T |μ̂|² t^{2γ} dt
  std::vector<SobolevDecade> decades;
};

/// Trapezoid rule on a log grid, decade by decade; points per decade double
/// until the decade changes by less than 0.1% or max_points is reached.
SobolevEnergy sobolev_energy(const SeriesParams& params, double gamma, double T,
                             double tol = 1e-3, std::int64_t max_points = 1 << 14,
                             int threads = 0);

}  // namespace drs
