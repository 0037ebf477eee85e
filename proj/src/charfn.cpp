#include "drs/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <tuple>

#include "drs/error.hpp"
#include "drs/primes.hpp"

namespace drs {

namespace {

// t/n modulo 1 with an exact remainder.
double frac_quotient(double t, double n) {
  const double hi = t / n;
  const double lo = std::fma(-hi, n, t) / n;
  return (hi - std::floor(hi)) + lo;
}

// t·n^{-s} modulo 1 in extended precision.
double frac_power(double t, double n, double s) {
  const long double f = static_cast<long double>(t) *
                        std::pow(static_cast<long double>(n), -static_cast<long double>(s));
  return static_cast<double>(f - std::floor(f));
}

// -t·log(1 - 1/n) modulo 1 in extended precision.
double frac_log(double t, double n) {
  const long double f =
      -static_cast<long double>(t) * std::log1p(-1.0L / static_cast<long double>(n));
  return static_cast<double>(f - std::floor(f));
}

double term_prob(const SeriesParams& params, double n) {
  if (params.beta == 1.0) return 1.0 / n;
  if (params.beta == 0.5) return 1.0 / std::sqrt(n);
  return std::pow(n, -params.beta);
}

double term_turns(const SeriesParams& params, double t, double n) {
  if (params.variant == Variant::LogProduct) {
    return frac_log(t, n);
  }
  if (params.s == 1.0) {
    return frac_quotient(t, n);
  }
  return frac_power(t, n, params.s);
}

// log of one factor 1 - 4p(1-p) sin²(π f).
double log_factor(double p, double f) {
  const double sn = std::sin(kPi * f);
  return std::log1p(-4.0 * p * (1.0 - p) * sn * sn);
}

std::int64_t truncation_for(const SeriesParams& params, double t, double tol,
                            std::int64_t cap, bool throw_on_cap) {
  t = std::abs(t);
  if (t == 0.0) {
    return 1;
  }
  const double s = params.variant == Variant::LogProduct ? 1.0 : params.s;
  const double need = std::ceil(std::pow(t, 1.0 / s));
  std::int64_t N = 1;
  while (static_cast<double>(N) < need && N < cap) {
    N *= 2;
  }
  while (truncation_bound(params, t, N) > tol) {
    if (N >= cap) {
      if (throw_on_cap) {
        fail(ErrorKind::Capacity, "auto_truncation: tolerance needs N > 2^34");
      }
      return cap;
    }
    N *= 2;
  }
  return N;
}

}  // namespace

double truncation_bound(const SeriesParams& params, double t, std::int64_t N) {
  validate(params);
  if (N < 1) {
    fail(ErrorKind::Domain, "truncation_bound: N must be >= 1");
  }
  t = std::abs(t);
  if (t == 0.0) {
    return 0.0;
  }
  const double w2 = (2.0 * kPi * t) * (2.0 * kPi * t);
  const double x = static_cast<double>(N);
  double tail = 0.0;
  double y_max = 0.0;
  if (params.variant == Variant::LogProduct) {
    tail = w2 * (std::pow(x, -3.0) + power_tail(3.0, x).upper);
    y_max = w2 * std::pow(x, -3.0);
  } else {
    const double a = 2.0 * params.s + params.beta;
    tail = w2 * power_tail(a, x).upper;
    y_max = w2 * std::pow(x + 1.0, -a);
  }
  if (y_max >= 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  return tail / (1.0 - y_max);
}

ProductValue modulus_sq_product(const SeriesParams& params, double t, std::int64_t N,
                                const PrimeTable* primes) {
  validate(params);
  if (classify(params) == ConvergenceClass::Diverges) {
    fail(ErrorKind::Domain, "modulus_sq_product: series diverges (s + beta <= 1)");
  }
  if (N < 1) {
    fail(ErrorKind::Domain, "modulus_sq_product: N must be >= 1");
  }
  t = std::abs(t);
  ProductValue out;
  if (t == 0.0) {
    return out;
  }
  CompensatedSum acc;
  bool zero = false;
  auto visit = [&](double n) {
    const double p = term_prob(params, n);
    if (p >= 1.0) {
      return;
    }
    const double lf = log_factor(p, term_turns(params, t, n));
    if (std::isinf(lf)) {
      zero = true;
    } else {
      acc += lf;
    }
  };
  if (params.variant == Variant::PrimesOnly) {
    std::optional<PrimeTable> own;
    if (primes == nullptr || primes->limit() < N) {
      own = sieve(std::max<std::int64_t>(N, 2));
      primes = &*own;
    }
    for (std::uint32_t p : primes->primes()) {
      if (p > N) break;
      visit(static_cast<double>(p));
    }
  } else {
    const std::int64_t start = params.variant == Variant::LogProduct ? 2 : 1;
    for (std::int64_t n = start; n <= N; ++n) {
      visit(static_cast<double>(n));
    }
  }
  out.trunc_error = truncation_bound(params, t, N);
  if (zero) {
    out.value = 0.0;
    out.log_value = -std::numeric_limits<double>::infinity();
  } else {
    out.log_value = acc.value();
    out.value = std::exp(out.log_value);
  }
  return out;
}

std::int64_t auto_truncation(const SeriesParams& params, double t, double tol) {
  validate(params);
  if (!(tol > 0.0)) {
    fail(ErrorKind::Domain, "auto_truncation: tol must be positive");
  }
  return truncation_for(params, t, tol, kMaxAutoTruncation, true);
}

std::vector<double> log_grid(double t_min, double t_max, int points_per_decade) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || points_per_decade < 1) {
    fail(ErrorKind::Domain, "log_grid: need 0 < t_min <= t_max and ppd >= 1");
  }
  const double lo = std::log10(t_min);
  const double span = std::log10(t_max) - lo;
  const auto steps = static_cast<std::int64_t>(std::round(span * points_per_decade));
  std::vector<double> grid;
  if (steps == 0) {
    grid.push_back(t_min);
    return grid;
  }
  for (std::int64_t i = 0; i <= steps; ++i) {
    grid.push_back(std::pow(10.0, lo + span * static_cast<double>(i) /
                                          static_cast<double>(steps)));
  }
  grid.front() = t_min;
  grid.back() = t_max;
  return grid;
}

CharFnProfile charfn_profile(const SeriesParams& params, const std::vector<double>& grid,
                             double tol, int threads) {
  validate(params);
  if (!(tol > 0.0)) {
    fail(ErrorKind::Domain, "charfn_profile: tol must be positive");
  }
  std::optional<PrimeTable> table;
  if (params.variant == Variant::PrimesOnly) {
    std::int64_t top = 2;
    for (double t : grid) top = std::max(top, auto_truncation(params, t, tol));
    table = sieve(top);
  }
  CharFnProfile profile;
  profile.params = params;
  profile.tol = tol;
  profile.points.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    ProfilePoint& pt = profile.points[i];
    pt.t = std::abs(grid[i]);
    pt.N_used = auto_truncation(params, pt.t, tol);
    const ProductValue v =
        modulus_sq_product(params, pt.t, pt.N_used, table ? &*table : nullptr);
    pt.log_modulus = 0.5 * v.log_value;
    pt.modulus = std::sqrt(v.value);
    pt.trunc_error = v.trunc_error;
  });
  return profile;
}

std::string profile_csv(const CharFnProfile& profile) {
  std::string out = "t,modulus,trunc_error,N_used\n";
  char line[128];
  for (const ProfilePoint& p : profile.points) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%lld\n", p.t, p.modulus,
                  p.trunc_error, static_cast<long long>(p.N_used));
    out += line;
  }
  return out;
}

double PhaseSpec::turns(std::int64_t n) const {
  const double x = static_cast<double>(n);
  if (kind == PhaseKind::Log) {
    return frac_log(t, x);
  }
  if (s == 1.0) {
    return frac_quotient(t, x);
  }
  return frac_power(t, x, s);
}

std::complex<double> exp_sum_direct(const PhaseSpec& f, std::int64_t first,
                                    std::int64_t last, const Weights& weights) {
  if (f.kind == PhaseKind::Log && first < 2 && first <= last) {
    fail(ErrorKind::Domain, "exp_sum_direct: log phase needs n >= 2");
  }
  CompensatedSum re, im;
  for (std::int64_t n = first; n <= last; ++n) {
    const double a = 2.0 * kPi * f.turns(n);
    const double w = weights ? weights(n) : 1.0;
    re += w * std::cos(a);
    im += w * std::sin(a);
  }
  return {re.value(), im.value()};
}

double block_weight(double beta, std::int64_t n) {
  const double x = static_cast<double>(n);
  const double p = beta == 1.0 ? 1.0 / x : std::pow(x, -beta);
  return p - p * p;
}

double exp_sum_by_parts(double t, double s, double beta, const DyadicBlock& block) {
  if (block.first > block.last || block.first < 1) {
    fail(ErrorKind::Domain, "exp_sum_by_parts: invalid block");
  }
  const PhaseSpec f{PhaseKind::Power, t, s};
  CompensatedSum partial;
  CompensatedSum total;
  double w_l = block_weight(beta, block.first);
  for (std::int64_t l = block.first; l <= block.last; ++l) {
    partial += std::cos(2.0 * kPi * f.turns(l));
    if (l < block.last) {
      const double w_next = block_weight(beta, l + 1);
      total += (w_l - w_next) * partial.value();
      w_l = w_next;
    } else {
      total += w_l * partial.value();
    }
  }
  return total.value();
}

double vdc_bound(const VdcParams& vp, std::int64_t interval_length) {
  if (vp.q < 0 || !(vp.N >= 1.0) || !(vp.F > 0.0) || !(vp.c > 0.0)) {
    fail(ErrorKind::Domain, "vdc_bound: need q >= 0, N >= 1, F > 0, c > 0");
  }
  if (interval_length < 0 || static_cast<double>(interval_length) > vp.N) {
    fail(ErrorKind::Domain, "vdc_bound: interval must lie inside (N, 2N]");
  }
  const double d = 4.0 * vp.Q() - 2.0;
  return vp.c * (std::pow(vp.F, 1.0 / d) * std::pow(vp.N, 1.0 - (vp.q + 2.0) / d) +
                 vp.N / vp.F);
}

VdcSweep vdc_sweep(double s, const std::vector<double>& ts, int k_max,
                   const std::vector<int>& qs, double c, int threads) {
  if (!(s > 0.0) || k_max < 0 || k_max > 40) {
    fail(ErrorKind::Domain, "vdc_sweep: need s > 0 and 0 <= k_max <= 40");
  }
  VdcSweep sweep;
  sweep.s = s;
  sweep.c = c;
  using Key = std::tuple<double, int, std::int64_t>;
  std::map<Key, double> direct;
  for (double t : ts) {
    for (int k = 0; k <= k_max; ++k) {
      const std::int64_t N = std::int64_t{1} << k;
      for (std::int64_t len : {N, N / 2}) {
        if (len < 1 || (len == N / 2 && N == 1)) continue;
        for (int q : qs) {
          VdcCase vc;
          vc.t = t;
          vc.k = k;
          vc.q = q;
          vc.length = len;
          const double Nd = static_cast<double>(N);
          vc.bound = vdc_bound({q, Nd, t / std::pow(Nd, s), c}, len);
          vc.trivial = vc.bound >= static_cast<double>(len);
          if (!vc.trivial) direct.emplace(Key{t, k, len}, 0.0);
          sweep.cases.push_back(vc);
        }
      }
    }
  }
  std::vector<std::pair<const Key, double>*> jobs;
  for (auto& kv : direct) jobs.push_back(&kv);
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const auto& [t, k, len] = jobs[i]->first;
    const std::int64_t first = (std::int64_t{1} << k) + 1;
    jobs[i]->second = std::abs(exp_sum_direct({PhaseKind::Power, t, s}, first, first + len - 1));
  });
  for (VdcCase& vc : sweep.cases) {
    if (vc.trivial) {
      vc.direct = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    vc.direct = direct.at(Key{vc.t, vc.k, vc.length});
    sweep.worst_ratio = std::max(sweep.worst_ratio, vc.direct / vc.bound);
    if (vc.direct > vc.bound) ++sweep.violations;
  }
  return sweep;
}

DecayFit decay_fit(const SeriesParams& params, const std::vector<double>& t_grid,
                   double tol, int threads) {
  validate(params);
  if (t_grid.size() < 2) {
    fail(ErrorKind::Domain, "decay_fit: grid needs at least two points");
  }
  if (params.beta > 1.0) {
    fail(ErrorKind::Unsupported, "decay_fit: beta > 1 has no decay to fit");
  }
  const CharFnProfile profile = charfn_profile(params, t_grid, tol, threads);
  DecayFit out;
  out.stretched = params.beta < 1.0;
  out.calibration_end = *std::min_element(t_grid.begin(), t_grid.end()) * 10.0;
  const double s = params.variant == Variant::LogProduct ? 1.0 : params.s;
  out.envelope_exponent = -1.0 / s + 0.1;
  out.envelope_log_C = -std::numeric_limits<double>::infinity();
  const double floor_log = std::log(1e-300);

  std::vector<ProfilePoint> later;
  for (const ProfilePoint& p : profile.points) {
    if (!(p.log_modulus >= floor_log)) {
      out.dropped_t.push_back(p.t);
      continue;
    }
    if (p.t < out.calibration_end) {
      out.envelope_log_C = std::max(out.envelope_log_C,
                                    p.log_modulus - out.envelope_exponent * std::log(p.t));
    } else {
      later.push_back(p);
    }
  }
  std::vector<std::pair<double, double>> pts;
  for (const ProfilePoint& p : later) {
    if (out.stretched) {
      if (p.log_modulus < 0.0) {
        pts.emplace_back(std::log(p.t), std::log(-p.log_modulus));
        out.used.push_back(p);
      } else {
        out.dropped_t.push_back(p.t);
      }
    } else {
      pts.emplace_back(std::log(p.t), p.log_modulus);
      out.used.push_back(p);
      if (p.log_modulus > out.envelope_exponent * std::log(p.t) + out.envelope_log_C) {
        ++out.envelope_violations;
      }
    }
  }
  out.fit = fit_slope(pts);
  return out;
}

namespace {

struct DecadeIntegrator {
  const SeriesParams& params;
  double gamma;
  std::int64_t N;
  int threads;
  const PrimeTable* primes;

  double integrand(double t) const {
    if (t == 0.0) return gamma == 0.0 ? 1.0 : 0.0;
    const ProductValue v = modulus_sq_product(params, t, N, primes);
    return v.value * std::pow(t, 2.0 * gamma);
  }

  std::vector<double> eval(const std::vector<double>& ts) const {
    std::vector<double> out(ts.size());
    parallel_for(ts.size(), threads, [&](std::size_t i) { out[i] = integrand(ts[i]); });
    return out;
  }
};

}  // namespace

SobolevEnergy sobolev_energy(const SeriesParams& params, double gamma, double T,
                             double tol, std::int64_t max_points, int threads) {
  validate(params);
  if (!(gamma >= 0.0) || !(T > 0.0) || !std::isfinite(T)) {
    fail(ErrorKind::Domain, "sobolev_energy: need gamma >= 0 and T > 0");
  }
  if (max_points < 2) {
    fail(ErrorKind::Domain, "sobolev_energy: max_points must be >= 2");
  }
  SobolevEnergy out;
  out.params = params;
  out.gamma = gamma;
  out.T = T;
  const std::int64_t n_cap = std::int64_t{1} << 20;
  std::optional<PrimeTable> table;
  if (params.variant == Variant::PrimesOnly) {
    table = sieve(n_cap);
  }

  // Pieces: [0, min(1,T)] on a uniform grid, then decades on log grids.
  std::vector<std::pair<double, double>> pieces;
  pieces.emplace_back(0.0, std::min(1.0, T));
  for (double lo = 1.0; lo < T; lo *= 10.0) {
    pieces.emplace_back(lo, std::min(lo * 10.0, T));
  }
  CompensatedSum cumulative;
  for (const auto& [a, b] : pieces) {
    SobolevDecade dec;
    dec.t_lo = a;
    dec.t_hi = b;
    dec.N_used = truncation_for(params, b, tol, n_cap, false);
    dec.trunc_error = truncation_bound(params, b, dec.N_used);
    const DecadeIntegrator integ{params, gamma, dec.N_used, threads,
                                 table ? &*table : nullptr};
    const bool uniform = a == 0.0;
    const double u0 = uniform ? a : std::log(a);
    const double u1 = uniform ? b : std::log(b);
    auto at = [&](double u) { return uniform ? u : std::exp(u); };
    auto jac = [&](double u) { return uniform ? 1.0 : std::exp(u); };

    std::int64_t m = 16;
    std::vector<double> us, gs;
    for (std::int64_t i = 0; i <= m; ++i) us.push_back(u0 + (u1 - u0) * i / m);
    {
      std::vector<double> ts(us.size());
      for (std::size_t i = 0; i < us.size(); ++i) ts[i] = at(us[i]);
      gs = integ.eval(ts);
      for (std::size_t i = 0; i < us.size(); ++i) gs[i] *= jac(us[i]);
    }
    auto trapezoid = [&]() {
      CompensatedSum acc;
      for (std::size_t i = 0; i < gs.size(); ++i) {
        acc += (i == 0 || i + 1 == gs.size()) ? 0.5 * gs[i] : gs[i];
      }
      return acc.value() * (u1 - u0) / static_cast<double>(gs.size() - 1);
    };
    double current = trapezoid();
    while (2 * m <= max_points) {
      std::vector<double> mids(static_cast<std::size_t>(m));
      for (std::int64_t i = 0; i < m; ++i) {
        mids[static_cast<std::size_t>(i)] = at(u0 + (u1 - u0) * (2 * i + 1) / (2.0 * m));
      }
      std::vector<double> gm = integ.eval(mids);
      std::vector<double> merged;
      merged.reserve(gs.size() + gm.size());
      for (std::int64_t i = 0; i < m; ++i) {
        merged.push_back(gs[static_cast<std::size_t>(i)]);
        const double u = u0 + (u1 - u0) * (2 * i + 1) / (2.0 * m);
        merged.push_back(gm[static_cast<std::size_t>(i)] * jac(u));
      }
      merged.push_back(gs.back());
      gs.swap(merged);
      m *= 2;
      const double next = trapezoid();
      const double change = std::abs(next - current);
      current = next;
      if (change <= 1e-3 * std::abs(next)) {
        dec.converged = true;
        break;
      }
    }
    dec.points = m + 1;
    dec.integral = 2.0 * current;
    cumulative += dec.integral;
    dec.cumulative = cumulative.value();
    out.decades.push_back(dec);
  }
  out.energy = cumulative.value();
  return out;
}

}  // namespace drs
