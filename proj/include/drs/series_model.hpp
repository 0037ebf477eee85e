#pragma once

// Parameter space of the random series  S = Σ I_n / n^s  with independent
// I_n ~ Bernoulli(n^{-β}), convergence classes, rigorous tail bounds and the
// dyadic block decomposition used by the exponential-sum estimates.

#include <cstdint>
#include <string>
#include <vector>

namespace drs {

enum class Variant {
  AllIntegers,  // Σ_n I_n / n^s
  PrimesOnly,   // Σ_p I_p / p^s over primes
  LogProduct    // -Σ_{n>=2} log(1 - I_n / n), only for s = β = 1
};

struct SeriesParams {
  double s = 1.0;
  double beta = 1.0;
  Variant variant = Variant::AllIntegers;
};

/// Throws Domain for non-positive/non-finite exponents and InvalidVariant
/// for LogProduct with (s, β) != (1, 1).
void validate(const SeriesParams& params);

enum class ConvergenceClass { ConvergesAC_Candidate, AtomicSingular, Diverges };

ConvergenceClass classify(const SeriesParams& params);

std::string to_string(ConvergenceClass kind);
std::string to_string(Variant variant);
Variant parse_variant(const std::string& name);

/// Certified bracket for the power tail Σ_{n>N} n^{-a}, a > 1, from the
/// convexity of u^{-a}: trapezoid below, midpoint above.
struct TailBracket {
  double lower = 0.0;
  double upper = 0.0;
};
TailBracket power_tail(double a, double N);

/// Rigorous upper bound on E Σ_{n>N} I_n/n^s = Σ_{n>N} n^{-s-β}: exact
/// partial sum up to 10N followed by the integral bound.
double tail_mean_bound(const SeriesParams& params, std::int64_t N);

struct DyadicBlock {
  int k = 0;               // block (2^k, 2^{k+1}]
  std::int64_t first = 0;  // 2^k + 1
  std::int64_t last = 0;   // 2^{k+1}
};

struct BlockDecomposition {
  double delta_q = 0.0;  // lower exponent
  double Delta = 0.0;    // upper exponent
  double t = 1.0;
  int m_q = 0;
  int M = 0;
  std::vector<DyadicBlock> blocks;  // k = m_q, ..., M-1; empty if M <= m_q
};

DyadicBlock dyadic_block(int k);

/// Blocks covering (2^{m_q}, 2^M] with m_q = ⌊log2 t^{δ_q}⌋, M = ⌊log2 t^Δ⌋.
/// β = 1: δ_q = 1/(q+2+s), Δ = 1/s.  β < 1 (q = 0 only): δ_0 = 1/(s+2),
/// Δ = 1/(s+1).
BlockDecomposition make_blocks(const SeriesParams& params, int q, double t);

}  // namespace drs
