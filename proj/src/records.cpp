#include "drs/records.hpp"

#include <algorithm>
#include <cmath>

#include "drs/error.hpp"

namespace drs {

namespace {

const double kSqrt5Half = std::sqrt(5.0) / 2.0;

struct Moments {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  std::int64_t count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
};

MeanEstimate finish(const std::vector<Moments>& chunks) {
  CompensatedSum sum, sum_sq;
  std::int64_t count = 0;
  for (const Moments& m : chunks) {
    sum += m.sum.value();
    sum_sq += m.sum_sq.value();
    count += m.count;
  }
  MeanEstimate est;
  est.trials = count;
  const double n = static_cast<double>(count);
  est.mean = sum.value() / n;
  const double var = std::max(0.0, sum_sq.value() / n - est.mean * est.mean);
  est.stderr_ = count > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  return est;
}

// Runs sample(rng) `trials` times in chunks, each chunk on its own substream.
template <class Sample>
MeanEstimate chunked_mean(std::int64_t trials, const RngStream& rng, int threads,
                          Sample&& sample) {
  if (trials < 1) {
    fail(ErrorKind::Domain, "Monte Carlo estimate needs trials >= 1");
  }
  const std::int64_t n_chunks = (trials + kDefaultChunk - 1) / kDefaultChunk;
  std::vector<Moments> chunks(static_cast<std::size_t>(n_chunks));
  parallel_for(chunks.size(), threads, [&](std::size_t c) {
    RngStream local = rng.substream(c);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kDefaultChunk;
    const std::int64_t end = std::min(trials, begin + kDefaultChunk);
    for (std::int64_t k = begin; k < end; ++k) {
      chunks[c].add(sample(local));
    }
  });
  return finish(chunks);
}

// V_n for one draw of independent I_j ~ Bernoulli(1/j), j = 2..n.
double draw_vn(std::int64_t n, RngStream& rng) {
  double log_prod = 0.0;
  // Index i stands for j = i + 2.
  for_each_hit(
      n - 1, [](std::int64_t i) { return 1.0 / static_cast<double>(i + 2); }, rng,
      [&](std::int64_t i) { log_prod += std::log1p(-1.0 / static_cast<double>(i + 2)); });
  const double x = static_cast<double>(n);
  return x / (x + 1.0) * std::exp(log_prod);
}

}  // namespace

double v_n_realization(const IndicatorPath& path) {
  const std::int64_t n = path.N();
  if (n < 1) {
    fail(ErrorKind::Domain, "v_n_realization: empty path");
  }
  double prod = 1.0;
  for (std::int64_t j = 2; j <= n; ++j) {
    if (path.at(j)) {
      prod *= 1.0 - 1.0 / static_cast<double>(j);
    }
  }
  const double x = static_cast<double>(n);
  return x / (x + 1.0) * prod;
}

std::vector<double> analytic_mean_vn_table(std::int64_t n_max) {
  if (n_max < 1) {
    fail(ErrorKind::Domain, "analytic_mean_vn: n must be >= 1");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  CompensatedSum log_prod;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double x = static_cast<double>(n);
    if (n >= 2) {
      log_prod += std::log1p(-1.0 / (x * x));
    }
    out.push_back(x / (x + 1.0) * std::exp(log_prod.value()));
  }
  return out;
}

double analytic_mean_vn(std::int64_t n) { return analytic_mean_vn_table(n).back(); }

double second_moment_product(std::int64_t n) {
  if (n < 1) {
    fail(ErrorKind::Domain, "second_moment_product: n must be >= 1");
  }
  CompensatedSum log_prod;
  for (std::int64_t j = 2; j <= n; ++j) {
    const double x = static_cast<double>(j);
    log_prod += std::log1p(1.0 / ((x - 1.0) * (x + 1.0) * (x + 1.0)));
  }
  return 0.25 * std::exp(log_prod.value());
}

CertifiedValue second_moment_limit(std::int64_t N) {
  if (N < 2) {
    fail(ErrorKind::Domain, "second_moment_limit: N must be >= 2");
  }
  CertifiedValue out;
  out.value = second_moment_product(N);
  const double x = static_cast<double>(N - 1);
  const double tail = 1.0 / (2.0 * x * x);
  out.error = out.value * std::expm1(tail);
  return out;
}

double second_moment_gamma(std::int64_t n) {
  if (n < 1) {
    fail(ErrorKind::Domain, "second_moment_gamma: n must be >= 1");
  }
  const double x = static_cast<double>(n);
  const double log_value = std::log(5.0) + std::log(x) + log_gamma(x + 1.5 - kSqrt5Half) +
                           log_gamma(x + 1.5 + kSqrt5Half) - 2.0 * log_gamma(x + 2.0) -
                           log_gamma(3.5 - kSqrt5Half) - log_gamma(3.5 + kSqrt5Half);
  return std::exp(log_value);
}

double limit_constant() { return -std::cos(kSqrt5Half * kPi) / kPi; }

MeanEstimate mc_mean_vn(std::int64_t n, std::int64_t trials, const RngStream& rng,
                        int threads) {
  if (n < 1) {
    fail(ErrorKind::Domain, "mc_mean_vn: n must be >= 1");
  }
  return chunked_mean(trials, rng, threads, [n](RngStream& r) { return draw_vn(n, r); });
}

MeanEstimate mc_second_moment(std::int64_t N, std::int64_t trials, const RngStream& rng,
                              int threads) {
  if (N < 1) {
    fail(ErrorKind::Domain, "mc_second_moment: N must be >= 1");
  }
  return chunked_mean(trials, rng, threads, [N](RngStream& r) {
    const double v = draw_vn(N, r);
    return v * v;
  });
}

BetaDecompositionReport beta_decomposition_check(std::int64_t n, std::int64_t trials,
                                                 const RngStream& rng, int threads) {
  if (n < 2) {
    fail(ErrorKind::Domain, "beta_decomposition_check: n must be >= 2");
  }
  if (trials < 2) {
    fail(ErrorKind::Domain, "beta_decomposition_check: trials must be >= 2");
  }
  const auto m = static_cast<std::size_t>(n - 1);
  struct Chunk {
    double residual = 0.0;
    Moments max;
    std::vector<std::int64_t> ones;
    std::vector<Moments> below;
  };
  const std::int64_t n_chunks = (trials + kDefaultChunk - 1) / kDefaultChunk;
  std::vector<Chunk> chunks(static_cast<std::size_t>(n_chunks));
  parallel_for(chunks.size(), threads, [&](std::size_t c) {
    Chunk& ch = chunks[c];
    ch.ones.assign(m, 0);
    ch.below.resize(m);
    RngStream local = rng.substream(c);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kDefaultChunk;
    const std::int64_t end = std::min(trials, begin + kDefaultChunk);
    for (std::int64_t k = begin; k < end; ++k) {
      const RecordPath path = records_from_uniforms(n, local);
      double prod = path.running_max.back();
      for (std::size_t i = 0; i < m; ++i) {
        const double r = path.ratios[i];
        prod *= r;
        if (r == 1.0) {
          ++ch.ones[i];
        } else {
          ch.below[i].add(r);
        }
      }
      ch.residual = std::max(ch.residual, std::abs(prod - path.uniforms.front()));
      ch.max.add(path.running_max.back());
    }
  });

  BetaDecompositionReport rep;
  rep.n = n;
  rep.trials = trials;
  std::vector<Moments> max_parts;
  for (const Chunk& ch : chunks) {
    rep.max_identity_residual = std::max(rep.max_identity_residual, ch.residual);
    max_parts.push_back(ch.max);
  }
  const MeanEstimate mean_max = finish(max_parts);
  rep.mean_max = mean_max.mean;
  rep.mean_max_stderr = mean_max.stderr_;
  const double nd = static_cast<double>(n);
  rep.expected_mean_max = nd / (nd + 1.0);
  bool ok = rep.max_identity_residual <= 1e-12 &&
            std::abs(rep.mean_max - rep.expected_mean_max) <= 4.0 * rep.mean_max_stderr;

  const double total = static_cast<double>(trials);
  for (std::size_t i = 0; i < m; ++i) {
    RatioStats st;
    st.j = static_cast<int>(i + 2);
    const double jd = static_cast<double>(st.j);
    std::int64_t ones = 0;
    std::vector<Moments> parts;
    for (const Chunk& ch : chunks) {
      ones += ch.ones[i];
      parts.push_back(ch.below[i]);
    }
    st.p_equal_one = static_cast<double>(ones) / total;
    st.expected_p = 1.0 - 1.0 / jd;
    st.p_equal_one_stderr = std::sqrt(st.expected_p * (1.0 - st.expected_p) / total);
    st.expected_cond_mean = (jd - 1.0) / jd;
    st.passed = std::abs(st.p_equal_one - st.expected_p) <= 4.0 * st.p_equal_one_stderr;
    const MeanEstimate cond = finish(parts);
    if (cond.trials > 1) {
      st.cond_mean = cond.mean;
      st.cond_mean_stderr = cond.stderr_;
      st.passed = st.passed &&
                  std::abs(st.cond_mean - st.expected_cond_mean) <= 4.0 * st.cond_mean_stderr;
    }
    ok = ok && st.passed;
    rep.ratios.push_back(st);
  }
  rep.passed = ok;
  return rep;
}

RecordMomentReport record_moment_report(std::int64_t n) {
  if (n < 0) {
    fail(ErrorKind::Domain, "record_moment_report: n must be >= 0");
  }
  RecordMomentReport rep;
  rep.n = n;
  rep.mean = 0.5;
  rep.limit_constant = limit_constant();
  if (n == 0) {
    const CertifiedValue lim = second_moment_limit(1'000'000);
    rep.second_moment_product = lim.value;
    rep.certificate = lim.error;
    rep.second_moment_gamma = second_moment_gamma(1'000'000);
  } else {
    rep.mean = analytic_mean_vn(n);
    rep.second_moment_product = second_moment_product(n);
    rep.second_moment_gamma = second_moment_gamma(n);
  }
  return rep;
}

}  // namespace drs
