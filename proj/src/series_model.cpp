#include "drs/series_model.hpp"

#include <cmath>

#include "drs/error.hpp"
#include "drs/numerics.hpp"

namespace drs {

void validate(const SeriesParams& params) {
  if (!std::isfinite(params.s) || !std::isfinite(params.beta) || params.s <= 0.0 ||
      params.beta <= 0.0) {
    fail(ErrorKind::Domain, "series parameters require s > 0 and beta > 0");
  }
  if (params.variant == Variant::LogProduct &&
      (params.s != 1.0 || params.beta != 1.0)) {
    fail(ErrorKind::InvalidVariant, "log-product variant requires s = 1 and beta = 1");
  }
}

ConvergenceClass classify(const SeriesParams& params) {
  validate(params);
  if (params.s + params.beta <= 1.0) {
    return ConvergenceClass::Diverges;
  }
  if (params.beta > 1.0) {
    return ConvergenceClass::AtomicSingular;
  }
  return ConvergenceClass::ConvergesAC_Candidate;
}

std::string to_string(ConvergenceClass kind) {
  switch (kind) {
    case ConvergenceClass::ConvergesAC_Candidate:
      return "converges_ac_candidate";
    case ConvergenceClass::AtomicSingular:
      return "atomic_singular";
    case ConvergenceClass::Diverges:
      return "diverges";
  }
  return "unknown";
}

std::string to_string(Variant variant) {
  switch (variant) {
    case Variant::AllIntegers:
      return "all";
    case Variant::PrimesOnly:
      return "primes";
    case Variant::LogProduct:
      return "log-product";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "all") return Variant::AllIntegers;
  if (name == "primes") return Variant::PrimesOnly;
  if (name == "log-product") return Variant::LogProduct;
  fail(ErrorKind::InvalidArgument, "unknown series variant '" + name + "'");
}

TailBracket power_tail(double a, double N) {
  if (!(a > 1.0) || !(N >= 0.0)) {
    fail(ErrorKind::Domain, "power_tail: need a > 1 and N >= 0");
  }
  const double lo_at = N + 1.0;
  const double hi_at = N + 0.5;
  TailBracket b;
  b.lower = std::pow(lo_at, 1.0 - a) / (a - 1.0) + 0.5 * std::pow(lo_at, -a);
  b.upper = std::pow(hi_at, 1.0 - a) / (a - 1.0);
  return b;
}

double tail_mean_bound(const SeriesParams& params, std::int64_t N) {
  validate(params);
  if (N < 1) {
    fail(ErrorKind::Domain, "tail_mean_bound: N must be >= 1");
  }
  if (classify(params) == ConvergenceClass::Diverges) {
    fail(ErrorKind::Domain, "tail_mean_bound: series diverges (s + beta <= 1)");
  }
  if (params.variant == Variant::LogProduct) {
    // E[-log(1 - I_n/n)] <= 1/(n(n-1)), which telescopes.
    return 1.0 / static_cast<double>(N);
  }
  const double a = params.s + params.beta;
  const std::int64_t head_end = 10 * N;
  CompensatedSum head;
  for (std::int64_t n = head_end; n > N; --n) {
    head += std::pow(static_cast<double>(n), -a);
  }
  head += power_tail(a, static_cast<double>(head_end)).upper;
  return head.value();
}

DyadicBlock dyadic_block(int k) {
  if (k < 0 || k > 61) {
    fail(ErrorKind::Domain, "dyadic_block: k out of range");
  }
  DyadicBlock b;
  b.k = k;
  b.first = (std::int64_t{1} << k) + 1;
  b.last = std::int64_t{1} << (k + 1);
  return b;
}

namespace {

int floor_snapped(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) {
    return static_cast<int>(r);
  }
  return static_cast<int>(std::floor(v));
}

}  // namespace

BlockDecomposition make_blocks(const SeriesParams& params, int q, double t) {
  validate(params);
  if (!(t >= 1.0) || !std::isfinite(t)) {
    fail(ErrorKind::Domain, "make_blocks: t must be >= 1");
  }
  if (q < 0) {
    fail(ErrorKind::Domain, "make_blocks: q must be >= 0");
  }
  const double s = params.s;
  double lower_denom = 0.0;
  double upper_denom = 0.0;
  if (params.beta == 1.0) {
    lower_denom = q + 2.0 + s;
    upper_denom = s;
  } else if (params.beta < 1.0) {
    if (q != 0) {
      fail(ErrorKind::Unsupported, "make_blocks: beta < 1 supports only q = 0");
    }
    lower_denom = s + 2.0;
    upper_denom = s + 1.0;
  } else {
    fail(ErrorKind::Unsupported, "make_blocks: beta > 1 has no block decomposition");
  }

  BlockDecomposition d;
  d.delta_q = 1.0 / lower_denom;
  d.Delta = 1.0 / upper_denom;
  d.t = t;
  const double log2t = std::log2(t);
  d.m_q = floor_snapped(log2t / lower_denom);
  d.M = floor_snapped(log2t / upper_denom);
  for (int k = d.m_q; k < d.M; ++k) {
    d.blocks.push_back(dyadic_block(k));
  }
  return d;
}

}  // namespace drs
