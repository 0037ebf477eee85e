#pragma once

// Record statistics: the martingale V_n, its second moment as a product and
// in gamma form, the limit -cos(√5π/2)/π, and the beta-ratio decomposition
// of U_1.

#include <cstdint>
#include <vector>

#include "drs/numerics.hpp"
#include "drs/sampler.hpp"

namespace drs {

/// V_n = n/(n+1) · Π_{j=2}^n (1 - I_j/j) with n = path.N().
double v_n_realization(const IndicatorPath& path);

/// E V_n = n/(n+1) · Π_{j=2}^n (1 - 1/j²), accumulated in log space.
double analytic_mean_vn(std::int64_t n);

/// analytic_mean_vn(n) for n = 1..n_max (index n-1).
std::vector<double> analytic_mean_vn_table(std::int64_t n_max);

/// E V_n² = (1/4) Π_{j=2}^n (1 + 1/((j-1)(j+1)²)).
double second_moment_product(std::int64_t n);

struct CertifiedValue {
  double value = 0.0;
  double error = 0.0;  // |true - value| <= error
};

/// E V_∞² from the product to N; the tail Σ_{j>N} 1/((j-1)(j+1)²) <=
/// 1/(2(N-1)²) gives the multiplicative certificate value·(e^bound - 1).
CertifiedValue second_moment_limit(std::int64_t N);

/// 5n Γ(n+3/2-√5/2) Γ(n+3/2+√5/2) / ((n+1)!² Γ(7/2-√5/2) Γ(7/2+√5/2)).
double second_moment_gamma(std::int64_t n);

/// -cos(√5π/2)/π.
double limit_constant();

struct MeanEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t trials = 0;
};

/// Monte Carlo E V_n with record indicators I_j ~ Bernoulli(1/j).
MeanEstimate mc_mean_vn(std::int64_t n, std::int64_t trials, const RngStream& rng,
                        int threads = 0);

/// Monte Carlo E V_N² as an estimate of E V_∞².
MeanEstimate mc_second_moment(std::int64_t N, std::int64_t trials, const RngStream& rng,
                              int threads = 0);

struct RatioStats {
  int j = 0;
  double p_equal_one = 0.0;
  double p_equal_one_stderr = 0.0;
  double expected_p = 0.0;  // 1 - 1/j
  double cond_mean = 0.0;   // E[M_{j-1}/M_j | ratio < 1]
  double cond_mean_stderr = 0.0;
  double expected_cond_mean = 0.0;  // (j-1)/j
  bool passed = false;
};

struct BetaDecompositionReport {
  std::int64_t n = 0;
  std::int64_t trials = 0;
  double max_identity_residual = 0.0;  // |U_1 - M_n Π M_{j-1}/M_j|
  double mean_max = 0.0;
  double mean_max_stderr = 0.0;
  double expected_mean_max = 0.0;  // n/(n+1)
  std::vector<RatioStats> ratios;  // j = 2..n
  bool passed = false;             // all checks within 4σ, identity <= 1e-12
};

BetaDecompositionReport beta_decomposition_check(std::int64_t n, std::int64_t trials,
                                                 const RngStream& rng, int threads = 0);

struct RecordMomentReport {
  std::int64_t n = 0;  // 0 stands for the limit n = ∞
  double mean = 0.0;
  double second_moment_product = 0.0;
  double second_moment_gamma = 0.0;
  double limit_constant = 0.0;
  double certificate = 0.0;  // only for the limit
};

/// Finite n, or the limit through the product truncated at N = 10^6 when n = 0.
RecordMomentReport record_moment_report(std::int64_t n);

}  // namespace drs
