#include "drs/drs.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "drs/charfn.hpp"
#include "drs/error.hpp"
#include "drs/exact_dist.hpp"
#include "drs/figure.hpp"
#include "drs/primes.hpp"
#include "drs/records.hpp"
#include "drs/sampler.hpp"
#include "drs/series_model.hpp"
#include "drs/verify.hpp"

struct drs_exact_dist {
  drs::AtomicDistribution dist;
};

struct drs_sample_batch {
  drs::SampleBatch batch;
};

struct drs_profile {
  drs::CharFnProfile profile;
};

struct drs_prime_table {
  drs::PrimeTable table;
};

namespace {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

thread_local std::string g_last_error;

drs_status status_of(drs::ErrorKind kind) {
  switch (kind) {
    case drs::ErrorKind::Domain: return DRS_ERR_DOMAIN;
    case drs::ErrorKind::Capacity: return DRS_ERR_CAPACITY;
    case drs::ErrorKind::DegenerateFit: return DRS_ERR_DEGENERATE_FIT;
    case drs::ErrorKind::InvalidVariant: return DRS_ERR_INVALID_VARIANT;
    case drs::ErrorKind::Unsupported: return DRS_ERR_UNSUPPORTED;
    case drs::ErrorKind::Io: return DRS_ERR_IO;
    case drs::ErrorKind::InvalidArgument: return DRS_ERR_INVALID_ARGUMENT;
  }
  return DRS_ERR_INTERNAL;
}

template <class Fn>
drs_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DRS_OK;
  } catch (const drs::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DRS_ERR_CAPACITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DRS_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    drs::fail(drs::ErrorKind::InvalidArgument, std::string(what) + " must not be null");
  }
}

drs::SeriesParams to_params(const drs_params* p) {
  require(p, "params");
  drs::SeriesParams out;
  out.s = p->s;
  out.beta = p->beta;
  switch (p->variant) {
    case DRS_VARIANT_ALL: out.variant = drs::Variant::AllIntegers; break;
    case DRS_VARIANT_PRIMES: out.variant = drs::Variant::PrimesOnly; break;
    case DRS_VARIANT_LOG_PRODUCT: out.variant = drs::Variant::LogProduct; break;
    default: drs::fail(drs::ErrorKind::InvalidArgument, "unknown variant");
  }
  drs::validate(out);
  return out;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  require(out, "output");
  *out = dup(s);
}

// Non-finite values become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json params_json(const drs::SeriesParams& p) {
  return {{"s", p.s}, {"beta", p.beta}, {"variant", drs::to_string(p.variant)}};
}

std::string document(const char* command, json config, json result) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["config"] = std::move(config);
  doc["result"] = std::move(result);
  return doc.dump(2) + "\n";
}

json fit_json(const drs::SlopeFit& f) {
  return {{"slope", num(f.slope)},
          {"intercept", num(f.intercept)},
          {"max_residual", num(f.max_residual)},
          {"n_points", f.n_points}};
}

std::string values_csv(const std::vector<double>& values) {
  std::string out = "value\n";
  char line[40];
  for (double v : values) {
    std::snprintf(line, sizeof line, "%.17g\n", v);
    out += line;
  }
  return out;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  f.close();
  if (!f) {
    drs::fail(drs::ErrorKind::Io, "cannot write " + p.string());
  }
}

}  // namespace

extern "C" {

const char* drs_version(void) { return "1.0.0"; }

const char* drs_last_error(void) { return g_last_error.c_str(); }

const char* drs_status_name(drs_status status) {
  switch (status) {
    case DRS_OK: return "ok";
    case DRS_ERR_DOMAIN: return "domain error";
    case DRS_ERR_CAPACITY: return "capacity error";
    case DRS_ERR_DEGENERATE_FIT: return "degenerate fit";
    case DRS_ERR_INVALID_VARIANT: return "invalid variant";
    case DRS_ERR_UNSUPPORTED: return "unsupported combination";
    case DRS_ERR_IO: return "i/o error";
    case DRS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DRS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int drs_status_is_validation(drs_status status) {
  switch (status) {
    case DRS_ERR_DOMAIN:
    case DRS_ERR_CAPACITY:
    case DRS_ERR_INVALID_VARIANT:
    case DRS_ERR_UNSUPPORTED:
    case DRS_ERR_INVALID_ARGUMENT:
      return 1;
    default:
      return 0;
  }
}

void drs_free_string(char* str) { std::free(str); }

drs_status drs_parse_variant(const char* name, drs_variant* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    switch (drs::parse_variant(name)) {
      case drs::Variant::AllIntegers: *out = DRS_VARIANT_ALL; break;
      case drs::Variant::PrimesOnly: *out = DRS_VARIANT_PRIMES; break;
      case drs::Variant::LogProduct: *out = DRS_VARIANT_LOG_PRODUCT; break;
    }
  });
}

drs_status drs_validate(const drs_params* params) {
  return guarded([&] { to_params(params); });
}

drs_status drs_classify(const drs_params* params, drs_class* out) {
  return guarded([&] {
    require(out, "out");
    switch (drs::classify(to_params(params))) {
      case drs::ConvergenceClass::ConvergesAC_Candidate:
        *out = DRS_CLASS_CONVERGES_AC_CANDIDATE;
        break;
      case drs::ConvergenceClass::AtomicSingular: *out = DRS_CLASS_ATOMIC_SINGULAR; break;
      case drs::ConvergenceClass::Diverges: *out = DRS_CLASS_DIVERGES; break;
    }
  });
}

drs_status drs_tail_mean_bound(const drs_params* params, int64_t N, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = drs::tail_mean_bound(to_params(params), N);
  });
}

drs_status drs_log_gamma(double x, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = drs::log_gamma(x);
  });
}

drs_status drs_exact_enumerate(const drs_params* params, int64_t N, drs_exact_dist** out) {
  return guarded([&] {
    require(out, "out");
    *out = new drs_exact_dist{drs::enumerate(to_params(params), N)};
  });
}

void drs_exact_free(drs_exact_dist* dist) { delete dist; }

size_t drs_exact_size(const drs_exact_dist* dist) { return dist ? dist->dist.size() : 0; }

const double* drs_exact_values(const drs_exact_dist* dist) {
  return dist ? dist->dist.values.data() : nullptr;
}

const double* drs_exact_probs(const drs_exact_dist* dist) {
  return dist ? dist->dist.probs.data() : nullptr;
}

drs_status drs_exact_moment(const drs_exact_dist* dist, int r, double* out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    *out = drs::exact_moment(dist->dist, r);
  });
}

drs_status drs_exact_charfn(const drs_exact_dist* dist, double t, double* re, double* im) {
  return guarded([&] {
    require(dist, "dist");
    require(re, "re");
    require(im, "im");
    const std::complex<double> z = drs::exact_charfn(dist->dist, t);
    *re = z.real();
    *im = z.imag();
  });
}

drs_status drs_exact_interval_prob(const drs_exact_dist* dist, double a, double b,
                                   double* out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    *out = drs::interval_prob(dist->dist, a, b);
  });
}

drs_status drs_exact_csv(const drs_exact_dist* dist, char** out) {
  return guarded([&] {
    require(dist, "dist");
    std::string text = "value,prob\n";
    char line[80];
    for (std::size_t i = 0; i < dist->dist.size(); ++i) {
      std::snprintf(line, sizeof line, "%.17g,%.17g\n", dist->dist.values[i],
                    dist->dist.probs[i]);
      text += line;
    }
    emit(out, text);
  });
}

drs_status drs_exact_json(const drs_exact_dist* dist, char** out) {
  return guarded([&] {
    require(dist, "dist");
    const drs::AtomicDistribution& d = dist->dist;
    json config = params_json(d.params);
    config["N"] = d.N;
    const double mean = drs::exact_moment(d, 1);
    json result = {{"atom_count", d.size()},
                   {"mean", mean},
                   {"variance", drs::exact_moment(d, 2) - mean * mean},
                   {"min", d.values.front()},
                   {"max", d.values.back()},
                   {"values", d.values},
                   {"probs", d.probs}};
    emit(out, document("exact", std::move(config), std::move(result)));
  });
}

drs_status drs_sample_series(const drs_params* params, int64_t N, int64_t n_samples,
                             uint64_t seed, int threads, drs_sample_batch** out) {
  return guarded([&] {
    require(out, "out");
    const drs::SeriesParams p = to_params(params);
    *out = new drs_sample_batch{
        drs::sample_series(p, N, n_samples, drs::RngStream(seed, 0), threads)};
  });
}

void drs_sample_free(drs_sample_batch* batch) { delete batch; }

size_t drs_sample_size(const drs_sample_batch* batch) {
  return batch ? batch->batch.values.size() : 0;
}

const double* drs_sample_values(const drs_sample_batch* batch) {
  return batch ? batch->batch.values.data() : nullptr;
}

int drs_sample_divergent(const drs_sample_batch* batch) {
  return batch && batch->batch.divergent ? 1 : 0;
}

drs_status drs_sample_csv(const drs_sample_batch* batch, double bin_width, char** out) {
  return guarded([&] {
    require(batch, "batch");
    if (bin_width > 0.0) {
      emit(out, drs::histogram_csv(drs::histogram(batch->batch.values, bin_width)));
    } else {
      emit(out, values_csv(batch->batch.values));
    }
  });
}

drs_status drs_sample_json(const drs_sample_batch* batch, double bin_width, char** out) {
  return guarded([&] {
    require(batch, "batch");
    const drs::SampleBatch& b = batch->batch;
    json config = params_json(b.params);
    config["N"] = b.N;
    config["samples"] = b.values.size();
    config["seed"] = b.seed;
    config["stream_id"] = b.stream_id;
    config["chunk_size"] = b.chunk_size;
    config["bin_width"] = bin_width;
    const double n = static_cast<double>(b.values.size());
    drs::CompensatedSum sum, sum_sq;
    for (double v : b.values) {
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum.value() / n;
    const double var = std::max(0.0, sum_sq.value() / n - mean * mean);
    const auto [lo, hi] = std::minmax_element(b.values.begin(), b.values.end());
    json result = {{"mean", mean},
                   {"stderr", n > 1 ? std::sqrt(var / (n - 1.0)) : 0.0},
                   {"min", *lo},
                   {"max", *hi},
                   {"divergent", b.divergent}};
    if (!b.divergent) {
      result["tail_mean_bound"] = num(drs::tail_mean_bound(b.params, b.N));
    }
    if (bin_width > 0.0) {
      const drs::Histogram h = drs::histogram(b.values, bin_width);
      json bins = json::array();
      for (std::size_t i = 0; i < h.counts.size(); ++i) {
        bins.push_back({h.bin_left(i), h.density(i)});
      }
      result["histogram"] = {{"columns", {"bin_left", "density"}}, {"bins", std::move(bins)}};
    }
    emit(out, document("sample", std::move(config), std::move(result)));
  });
}

drs_status drs_modulus_sq_product(const drs_params* params, double t, int64_t N,
                                  double* value, double* trunc_error) {
  return guarded([&] {
    require(value, "value");
    require(trunc_error, "trunc_error");
    const drs::ProductValue v = drs::modulus_sq_product(to_params(params), t, N);
    *value = v.value;
    *trunc_error = v.trunc_error;
  });
}

drs_status drs_auto_truncation(const drs_params* params, double t, double tol, int64_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = drs::auto_truncation(to_params(params), t, tol);
  });
}

drs_status drs_charfn_profile(const drs_params* params, double t_min, double t_max,
                              int points_per_decade, double tol, int threads,
                              drs_profile** out) {
  return guarded([&] {
    require(out, "out");
    const drs::SeriesParams p = to_params(params);
    *out = new drs_profile{
        drs::charfn_profile(p, drs::log_grid(t_min, t_max, points_per_decade), tol, threads)};
  });
}

void drs_profile_free(drs_profile* profile) { delete profile; }

size_t drs_profile_size(const drs_profile* profile) {
  return profile ? profile->profile.points.size() : 0;
}

drs_status drs_profile_get(const drs_profile* profile, size_t i, drs_profile_point* out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    if (i >= profile->profile.points.size()) {
      drs::fail(drs::ErrorKind::InvalidArgument, "profile index out of range");
    }
    const drs::ProfilePoint& p = profile->profile.points[i];
    *out = {p.t, p.modulus, p.trunc_error, p.N_used};
  });
}

drs_status drs_profile_csv(const drs_profile* profile, char** out) {
  return guarded([&] {
    require(profile, "profile");
    emit(out, drs::profile_csv(profile->profile));
  });
}

drs_status drs_profile_json(const drs_profile* profile, char** out) {
  return guarded([&] {
    require(profile, "profile");
    const drs::CharFnProfile& pr = profile->profile;
    json config = params_json(pr.params);
    config["tol"] = pr.tol;
    json points = json::array();
    for (const drs::ProfilePoint& p : pr.points) {
      points.push_back({{"t", p.t},
                        {"modulus", p.modulus},
                        {"log_modulus", num(p.log_modulus)},
                        {"trunc_error", num(p.trunc_error)},
                        {"N_used", p.N_used}});
    }
    emit(out, document("charfn", std::move(config), {{"points", std::move(points)}}));
  });
}

drs_status drs_decay_fit_json(const drs_params* params, double t_min, double t_max,
                              int points_per_decade, double tol, int threads, char** out) {
  return guarded([&] {
    const drs::SeriesParams p = to_params(params);
    const drs::DecayFit f =
        drs::decay_fit(p, drs::log_grid(t_min, t_max, points_per_decade), tol, threads);
    json config = params_json(p);
    config["t_min"] = t_min;
    config["t_max"] = t_max;
    config["points_per_decade"] = points_per_decade;
    config["tol"] = tol;
    json used = json::array();
    for (const drs::ProfilePoint& q : f.used) {
      used.push_back({{"t", q.t}, {"log_modulus", q.log_modulus}, {"N_used", q.N_used}});
    }
    json result = {{"mode", f.stretched ? "stretched_exponent" : "power_law"},
                   {"fit", fit_json(f.fit)},
                   {"calibration_end", f.calibration_end},
                   {"dropped_t", f.dropped_t},
                   {"points", std::move(used)}};
    if (!f.stretched) {
      result["envelope"] = {{"exponent", f.envelope_exponent},
                            {"log_C", num(f.envelope_log_C)},
                            {"violations", f.envelope_violations}};
    }
    emit(out, document("decay-fit", std::move(config), std::move(result)));
  });
}

drs_status drs_vdc_sweep_json(double s, const double* ts, size_t n_t, int k_max,
                              const int* qs, size_t n_q, double c, int threads, char** json_out,
                              char** csv_out) {
  return guarded([&] {
    if (n_t > 0) require(ts, "ts");
    if (n_q > 0) require(qs, "qs");
    const std::vector<double> tv(ts, ts + n_t);
    const std::vector<int> qv(qs, qs + n_q);
    const drs::VdcSweep sweep = drs::vdc_sweep(s, tv, k_max, qv, c, threads);
    std::int64_t summed = 0;
    std::string csv = "t,k,q,length,direct,bound,trivial\n";
    char line[160];
    for (const drs::VdcCase& vc : sweep.cases) {
      summed += vc.trivial ? 0 : 1;
      std::snprintf(line, sizeof line, "%.17g,%d,%d,%lld,%.17g,%.17g,%d\n", vc.t, vc.k, vc.q,
                    static_cast<long long>(vc.length), vc.direct, vc.bound, vc.trivial ? 1 : 0);
      csv += line;
    }
    json config = {{"s", s}, {"t", tv}, {"k_max", k_max}, {"q", qv}, {"c", c}};
    json result = {{"cases", sweep.cases.size()},
                   {"summed_cases", summed},
                   {"violations", sweep.violations},
                   {"worst_ratio", sweep.worst_ratio}};
    if (json_out != nullptr) emit(json_out, document("vdc-sweep", config, result));
    if (csv_out != nullptr) emit(csv_out, csv);
  });
}

drs_status drs_sobolev_json(const drs_params* params, double gamma, double T, double tol,
                            int threads, char** out) {
  return guarded([&] {
    const drs::SeriesParams p = to_params(params);
    const drs::SobolevEnergy e = drs::sobolev_energy(p, gamma, T, tol, 1 << 14, threads);
    json config = params_json(p);
    config["gamma"] = gamma;
    config["T"] = T;
    config["tol"] = tol;
    json decades = json::array();
    for (const drs::SobolevDecade& d : e.decades) {
      decades.push_back({{"t_lo", d.t_lo},
                         {"t_hi", d.t_hi},
                         {"integral", d.integral},
                         {"cumulative", d.cumulative},
                         {"points", d.points},
                         {"N_used", d.N_used},
                         {"trunc_error", num(d.trunc_error)},
                         {"converged", d.converged}});
    }
    emit(out, document("sobolev", std::move(config),
                       {{"energy", e.energy}, {"decades", std::move(decades)}}));
  });
}

drs_status drs_second_moment_product(int64_t n, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = drs::second_moment_product(n);
  });
}

drs_status drs_second_moment_gamma(int64_t n, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = drs::second_moment_gamma(n);
  });
}

double drs_limit_constant(void) { return drs::limit_constant(); }

drs_status drs_records_json(int64_t n, int64_t trials, uint64_t seed, int threads,
                            char** out) {
  return guarded([&] {
    const drs::RecordMomentReport rep = drs::record_moment_report(n);
    json config = {{"n", n == 0 ? json("infinity") : json(n)}, {"trials", trials}, {"seed", seed}};
    json result = {{"mean", rep.mean},
                   {"second_moment_product", rep.second_moment_product},
                   {"second_moment_gamma", rep.second_moment_gamma},
                   {"limit_constant", rep.limit_constant}};
    const drs::RngStream rng(seed, 0);
    if (n == 0) {
      result["truncation"] = 1'000'000;
      result["certificate"] = rep.certificate;
      const drs::MeanEstimate mc = drs::mc_second_moment(1'000'000, trials, rng, threads);
      result["mc_second_moment"] = {{"mean", mc.mean}, {"stderr", mc.stderr_}};
    } else {
      const drs::MeanEstimate mc = drs::mc_mean_vn(n, trials, rng, threads);
      result["mc_mean"] = {{"mean", mc.mean}, {"stderr", mc.stderr_}};
    }
    const std::int64_t bn = n >= 2 && n <= 1000 ? n : 10;
    const drs::BetaDecompositionReport beta =
        drs::beta_decomposition_check(bn, trials, rng.substream(1), threads);
    json ratios = json::array();
    for (const drs::RatioStats& r : beta.ratios) {
      ratios.push_back({{"j", r.j},
                        {"p_equal_one", r.p_equal_one},
                        {"expected_p", r.expected_p},
                        {"stderr", r.p_equal_one_stderr},
                        {"cond_mean", r.cond_mean},
                        {"expected_cond_mean", r.expected_cond_mean},
                        {"cond_mean_stderr", r.cond_mean_stderr},
                        {"passed", r.passed}});
    }
    result["beta_decomposition"] = {{"n", beta.n},
                                    {"max_identity_residual", beta.max_identity_residual},
                                    {"mean_max", beta.mean_max},
                                    {"mean_max_stderr", beta.mean_max_stderr},
                                    {"expected_mean_max", beta.expected_mean_max},
                                    {"ratios", std::move(ratios)},
                                    {"passed", beta.passed}};
    emit(out, document("records", std::move(config), std::move(result)));
  });
}

drs_status drs_sieve(int64_t limit, drs_prime_table** out) {
  return guarded([&] {
    require(out, "out");
    *out = new drs_prime_table{drs::sieve(limit)};
  });
}

void drs_prime_table_free(drs_prime_table* table) { delete table; }

drs_status drs_prime_count(const drs_prime_table* table, int64_t x, uint64_t* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    *out = table->table.prime_count(x);
  });
}

drs_status drs_mobius(const drs_prime_table* table, int64_t m, int* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    *out = table->table.mobius(m);
  });
}

drs_status drs_mertens_ratio(const drs_prime_table* table, int64_t x, double* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    *out = drs::mertens_ratio(table->table, x);
  });
}

drs_status drs_mertens_json(int64_t limit, char** out) {
  return guarded([&] {
    if (limit < 1000) {
      drs::fail(drs::ErrorKind::Domain, "mertens: limit must be >= 1000");
    }
    const drs::PrimeTable pt = drs::sieve(limit);
    json decades = json::array();
    for (std::int64_t x = 1000; x <= limit; x *= 10) {
      const double r = drs::mertens_ratio(pt, x);
      decades.push_back({{"x", x}, {"ratio", r}, {"deviation", std::abs(r - 1.0)}});
    }
    const double density =
        static_cast<double>(drs::squarefree_count(pt, limit)) / static_cast<double>(limit);
    json result = {{"prime_count", pt.prime_count(limit)},
                   {"mertens", std::move(decades)},
                   {"squarefree_density", density},
                   {"squarefree_target", 6.0 / (drs::kPi * drs::kPi)}};
    emit(out, document("mertens", {{"limit", limit}}, std::move(result)));
  });
}

void drs_singularity_default(drs_singularity_config* config) {
  if (config == nullptr) return;
  const drs::SingularityConfig d;
  *config = {d.s, d.epsilon, d.N, d.trials, d.seed, d.threads, d.truncation};
}

drs_status drs_singularity_json(const drs_singularity_config* config, char** json_out,
                                char** intervals_csv) {
  return guarded([&] {
    require(config, "config");
    drs::SingularityConfig c;
    c.s = config->s;
    c.epsilon = config->epsilon;
    c.N = config->N;
    c.trials = config->trials;
    c.seed = config->seed;
    c.threads = config->threads;
    c.truncation = config->truncation;
    const drs::SingularityReport r = drs::singularity_experiment(c);
    json cfg = {{"s", c.s},         {"epsilon", c.epsilon}, {"N", c.N},
                {"trials", c.trials}, {"seed", c.seed},     {"truncation", r.truncation},
                {"atom_bin_width", c.atom_bin_width}};
    json result = {{"C", r.C},
                   {"B_measure", r.B_measure},
                   {"union_bound", 2.0 * r.C * std::pow(static_cast<double>(c.N), -c.s) *
                                       static_cast<double>(r.squarefree_terms)},
                   {"interval_count", r.interval_count},
                   {"squarefree_terms", r.squarefree_terms},
                   {"mc_prob", r.mc_prob},
                   {"mc_stderr", r.mc_stderr},
                   {"truncation_tail_bound", r.truncation_tail_bound},
                   {"max_bin_mass", r.max_bin_mass},
                   {"max_bin_left", r.max_bin_left}};
    if (json_out != nullptr) emit(json_out, document("singularity", cfg, result));
    if (intervals_csv != nullptr) {
      std::string csv = "lo,hi\n";
      char line[80];
      for (const drs::Interval& iv : r.intervals) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", iv.lo, iv.hi);
        csv += line;
      }
      emit(intervals_csv, csv);
    }
  });
}

drs_status drs_ap_check_json(const char* family, double s, int64_t limit, char** out) {
  return guarded([&] {
    require(family, "family");
    const std::string fam = family;
    if (fam != "power" && fam != "one" && fam != "zero") {
      drs::fail(drs::ErrorKind::InvalidArgument,
                "ap-check family must be power, one or zero");
    }
    if (fam == "power" && !(s > 0.0)) {
      drs::fail(drs::ErrorKind::Domain, "ap-check: power family needs s > 0");
    }
    const drs::PrimeTable pt = drs::sieve(limit);
    std::vector<double> a(pt.primes().size());
    drs::ApTail tail;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double p = pt.primes()[i];
      a[i] = fam == "power" ? std::pow(p, -s) : fam == "one" ? 1.0 : 0.0;
    }
    if (fam == "power") tail = {1.0, s};
    if (fam == "one") tail = {1.0, 0.0};
    const drs::ApCheck c = drs::general_ap_check(pt, a, tail);
    json config = {{"family", fam}, {"limit", limit}};
    if (fam == "power") config["s"] = s;
    json result = {{"divergent_support", c.divergent_support},
                   {"absolutely_summable", c.absolutely_summable},
                   {"power_tail", c.power_tail},
                   {"support_increment", c.support_increment},
                   {"last_decade_increment", c.last_decade_increment},
                   {"previous_decade_increment", c.previous_decade_increment},
                   {"tail_beyond_limit", num(c.tail_beyond_limit)},
                   {"fitted_K", num(c.fitted_K)},
                   {"fitted_c", num(c.fitted_c)}};
    emit(out, document("ap-check", std::move(config), std::move(result)));
  });
}

void drs_figure1_default(drs_figure1_config* config) {
  if (config == nullptr) return;
  static const double kS[] = {0.6, 1.0, 1.4, 2.2};
  const drs::Figure1Config d;
  *config = {d.N, d.samples, d.bin_width, d.beta, kS, 4, d.seed, d.threads};
}

drs_status drs_figure1_run(const drs_figure1_config* config, const char* out_dir,
                           char** json_out) {
  return guarded([&] {
    require(config, "config");
    require(out_dir, "out_dir");
    if (config->n_s > 0) require(config->s_values, "s_values");
    drs::Figure1Config c;
    c.N = config->N;
    c.samples = config->samples;
    c.bin_width = config->bin_width;
    c.beta = config->beta;
    c.s_values.assign(config->s_values, config->s_values + config->n_s);
    c.seed = config->seed;
    c.threads = config->threads;
    const std::vector<drs::Figure1Panel> panels = drs::figure1(c);
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    json files = json::array();
    json summary = json::array();
    for (const drs::Figure1Panel& p : panels) {
      const std::string name = drs::figure1_file_name(p.s);
      write_text(dir / name, drs::histogram_csv(p.hist));
      files.push_back(name);
      summary.push_back({{"s", p.s},
                         {"file", name},
                         {"bins", p.hist.counts.size()},
                         {"integral", p.hist.integral()},
                         {"support_start", p.hist.min_nonempty_left()},
                         {"max_density", p.hist.max_density()},
                         {"mean", p.mean},
                         {"min", p.min_value},
                         {"max", p.max_value},
                         {"tail_mean_bound", num(p.tail_mean_bound)}});
    }
    json cfg = {{"N", c.N},         {"samples", c.samples}, {"bin_width", c.bin_width},
                {"beta", c.beta},   {"s", c.s_values},      {"seed", c.seed}};
    if (json_out != nullptr) {
      emit(json_out, document("figure1", cfg, {{"panels", std::move(summary)}}));
    }
  });
}

int drs_criterion_count(void) { return drs::kCriterionCount; }

drs_status drs_verify_criterion(int id, int threads, const char* work_dir,
                                drs_criterion_result* out) {
  return guarded([&] {
    require(out, "out");
    drs::VerifyOptions opt;
    opt.threads = threads;
    if (work_dir != nullptr) opt.work_dir = work_dir;
    const drs::CriterionResult r = drs::run_criterion(id, opt);
    out->id = r.id;
    out->passed = r.passed ? 1 : 0;
    out->seconds = r.seconds;
    std::snprintf(out->name, sizeof out->name, "%s", r.name.c_str());
    std::snprintf(out->detail, sizeof out->detail, "%s", r.detail.c_str());
  });
}

}  // extern "C"
