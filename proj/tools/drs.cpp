// drs: command-line driver for the random Dirichlet series library.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drs/drs.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 1;

struct Options {
  double s = 1.0;
  double beta = 1.0;
  std::string variant = "all";
  int64_t n_trunc = 10000;
  int64_t samples = 1000000;
  uint64_t seed = 1;
  double bins = 0.0;
  double t_min = 10.0;
  double t_max = 1e4;
  int ppd = 5;
  double tol = 1e-3;
  double gamma = 0.1;
  double epsilon = 0.5;
  int64_t limit = 10000000;
  int64_t n = 0;
  std::string family = "power";
  std::string out;
  std::string format = "json";
  int threads = 0;
  int k_max = 10;
  std::vector<int> q{0, 1, 2, 3};
  double c = 8.0;
  std::vector<int> criteria;
  std::string work_dir;
};

// Carries a library status out of a command.
struct Failure {
  drs_status status;
};

void check(drs_status st) {
  if (st != DRS_OK) throw Failure{st};
}

class OwnedString {
 public:
  ~OwnedString() { drs_free_string(p_); }
  char** slot() { return &p_; }
  const char* get() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

void write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.close();
  if (!f) {
    std::cerr << "drs: cannot write " << path << "\n";
    throw Failure{DRS_ERR_IO};
  }
}

drs_params make_params(const Options& o) {
  drs_params p{o.s, o.beta, DRS_VARIANT_ALL};
  check(drs_parse_variant(o.variant.c_str(), &p.variant));
  check(drs_validate(&p));
  return p;
}

bool want_csv(const Options& o) { return o.format == "csv"; }

void cmd_figure1(const Options& o, const std::vector<double>& s_values, bool s_given) {
  drs_figure1_config cfg;
  drs_figure1_default(&cfg);
  cfg.N = o.n_trunc;
  cfg.samples = o.samples;
  cfg.bin_width = o.bins;
  cfg.beta = o.beta;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  if (s_given) {
    cfg.s_values = s_values.data();
    cfg.n_s = s_values.size();
  }
  OwnedString json;
  check(drs_figure1_run(&cfg, o.out.empty() ? "." : o.out.c_str(), json.slot()));
  std::fputs(json.get(), stdout);
}

void cmd_sample(const Options& o) {
  const drs_params p = make_params(o);
  drs_sample_batch* batch = nullptr;
  check(drs_sample_series(&p, o.n_trunc, o.samples, o.seed, o.threads, &batch));
  std::unique_ptr<drs_sample_batch, decltype(&drs_sample_free)> guard(batch, drs_sample_free);
  if (drs_sample_divergent(batch)) {
    std::cerr << "drs: warning: s + beta <= 1, the series diverges; values depend on N\n";
  }
  OwnedString text;
  check(want_csv(o) ? drs_sample_csv(batch, o.bins, text.slot())
                    : drs_sample_json(batch, o.bins, text.slot()));
  write_output(o.out, text.get());
}

void cmd_exact(const Options& o) {
  const drs_params p = make_params(o);
  drs_exact_dist* dist = nullptr;
  check(drs_exact_enumerate(&p, o.n_trunc, &dist));
  std::unique_ptr<drs_exact_dist, decltype(&drs_exact_free)> guard(dist, drs_exact_free);
  OwnedString text;
  check(want_csv(o) ? drs_exact_csv(dist, text.slot()) : drs_exact_json(dist, text.slot()));
  write_output(o.out, text.get());
}

void cmd_charfn(const Options& o) {
  const drs_params p = make_params(o);
  drs_profile* prof = nullptr;
  check(drs_charfn_profile(&p, o.t_min, o.t_max, o.ppd, o.tol, o.threads, &prof));
  std::unique_ptr<drs_profile, decltype(&drs_profile_free)> guard(prof, drs_profile_free);
  OwnedString text;
  check(want_csv(o) ? drs_profile_csv(prof, text.slot()) : drs_profile_json(prof, text.slot()));
  write_output(o.out, text.get());
}

void cmd_decay_fit(const Options& o) {
  const drs_params p = make_params(o);
  OwnedString text;
  check(drs_decay_fit_json(&p, o.t_min, o.t_max, o.ppd, o.tol, o.threads, text.slot()));
  write_output(o.out, text.get());
}

void cmd_vdc_sweep(const Options& o) {
  if (!(o.t_min > 0.0) || !(o.t_max >= o.t_min) || o.ppd < 1) {
    std::cerr << "drs: vdc-sweep needs 0 < t-min <= t-max and ppd >= 1\n";
    throw Failure{DRS_ERR_DOMAIN};
  }
  std::vector<double> ts;
  const double decades = std::log10(o.t_max / o.t_min);
  const int steps = static_cast<int>(std::floor(decades * o.ppd + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    ts.push_back(o.t_min * std::pow(10.0, static_cast<double>(i) / o.ppd));
  }
  OwnedString json, csv;
  check(drs_vdc_sweep_json(o.s, ts.data(), ts.size(), o.k_max, o.q.data(), o.q.size(), o.c,
                           o.threads, json.slot(), csv.slot()));
  write_output(o.out, want_csv(o) ? csv.get() : json.get());
}

void cmd_records(const Options& o) {
  OwnedString text;
  check(drs_records_json(o.n, o.samples, o.seed, o.threads, text.slot()));
  write_output(o.out, text.get());
}

void cmd_sobolev(const Options& o) {
  const drs_params p = make_params(o);
  OwnedString text;
  check(drs_sobolev_json(&p, o.gamma, o.t_max, o.tol, o.threads, text.slot()));
  write_output(o.out, text.get());
}

void cmd_mertens(const Options& o) {
  OwnedString text;
  check(drs_mertens_json(o.limit, text.slot()));
  write_output(o.out, text.get());
}

void cmd_singularity(const Options& o, bool limit_given) {
  drs_singularity_config cfg;
  drs_singularity_default(&cfg);
  cfg.s = o.s;
  cfg.epsilon = o.epsilon;
  cfg.N = o.n_trunc;
  cfg.trials = o.samples;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  if (limit_given) cfg.truncation = o.limit;
  OwnedString json, csv;
  check(drs_singularity_json(&cfg, json.slot(), csv.slot()));
  write_output(o.out, want_csv(o) ? csv.get() : json.get());
}

void cmd_ap_check(const Options& o) {
  OwnedString text;
  check(drs_ap_check_json(o.family.c_str(), o.s, o.limit, text.slot()));
  write_output(o.out, text.get());
}

int cmd_verify(const Options& o) {
  std::vector<int> ids = o.criteria;
  if (ids.empty()) {
    for (int i = 1; i <= drs_criterion_count(); ++i) ids.push_back(i);
  }
  int failed = 0;
  for (int id : ids) {
    drs_criterion_result r;
    check(drs_verify_criterion(id, o.threads, o.work_dir.empty() ? nullptr : o.work_dir.c_str(),
                               &r));
    std::printf("%-4s criterion %2d  %-28s %7.1fs  %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name, r.seconds, r.detail);
    std::fflush(stdout);
    failed += r.passed ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", ids.size(), failed);
  return failed == 0 ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Dirichlet series: sampling, exact laws, Fourier decay, records, primes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", drs_version());

  std::vector<double> s_values;
  std::deque<Options> opts;

  auto add_threads = [&](CLI::App* c, Options& o) {
    c->add_option("--threads", o.threads, "Worker threads (0: DRS_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_series = [&](CLI::App* c, Options& o) {
    c->add_option("--s", o.s, "Exponent s")->capture_default_str();
    c->add_option("--beta", o.beta, "Bernoulli exponent beta")->capture_default_str();
    c->add_option("--variant", o.variant, "all | primes | log-product")->capture_default_str();
  };
  auto add_out = [&](CLI::App* c, Options& o, bool csv) {
    c->add_option("--out", o.out, "Output file (default stdout)");
    if (csv) {
      c->add_option("--format", o.format, "csv | json")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
    }
  };
  auto add_grid = [&](CLI::App* c, Options& o) {
    c->add_option("--t-min", o.t_min, "Smallest t")->capture_default_str();
    c->add_option("--t-max", o.t_max, "Largest t")->capture_default_str();
    c->add_option("--ppd", o.ppd, "Grid points per decade")->capture_default_str();
  };

  Options& fig_o = opts.emplace_back();
  auto* fig = app.add_subcommand("figure1", "Histograms of S for several s (writes CSVs)");
  fig->add_option("--s", s_values, "s values (default 0.6 1.0 1.4 2.2)");
  fig->add_option("--beta", fig_o.beta, "Bernoulli exponent beta")->capture_default_str();
  fig->add_option("--n-trunc", fig_o.n_trunc, "Truncation N")->capture_default_str();
  fig->add_option("--samples", fig_o.samples, "Samples per s")->capture_default_str();
  fig->add_option("--seed", fig_o.seed, "Seed")->capture_default_str();
  fig->add_option("--bins", fig_o.bins, "Bin width")->default_val(1e-3);
  fig->add_option("--out", fig_o.out, "Output directory (default .)");
  add_threads(fig, fig_o);

  Options& sample_o = opts.emplace_back();
  auto* sample = app.add_subcommand("sample", "Monte Carlo samples of the truncated sum");
  add_series(sample, sample_o);
  sample->add_option("--n-trunc", sample_o.n_trunc, "Truncation N")->capture_default_str();
  sample->add_option("--samples", sample_o.samples, "Sample count")->capture_default_str();
  sample->add_option("--seed", sample_o.seed, "Seed")->capture_default_str();
  sample->add_option("--bins", sample_o.bins, "Histogram bin width (0: raw values)")
      ->capture_default_str();
  add_out(sample, sample_o, true);
  add_threads(sample, sample_o);

  Options& exact_o = opts.emplace_back();
  auto* exact = app.add_subcommand("exact", "Exact law of the sum truncated at N <= 25");
  add_series(exact, exact_o);
  exact->add_option("--n-trunc", exact_o.n_trunc, "Truncation N")->default_val(20);
  add_out(exact, exact_o, true);

  Options& charfn_o = opts.emplace_back();
  auto* charfn = app.add_subcommand("charfn", "|characteristic function| on a log grid");
  add_series(charfn, charfn_o);
  add_grid(charfn, charfn_o);
  charfn->add_option("--tol", charfn_o.tol, "Truncation tolerance on log|phi|")->capture_default_str();
  add_out(charfn, charfn_o, true);
  add_threads(charfn, charfn_o);

  Options& decay_o = opts.emplace_back();
  auto* decay = app.add_subcommand("decay-fit", "Fit the Fourier decay exponent");
  add_series(decay, decay_o);
  add_grid(decay, decay_o);
  decay->add_option("--tol", decay_o.tol, "Truncation tolerance on log|phi|")->capture_default_str();
  add_out(decay, decay_o, false);
  add_threads(decay, decay_o);

  Options& vdc_o = opts.emplace_back();
  auto* vdc = app.add_subcommand("vdc-sweep", "Direct exponential sums vs the van der Corput bound");
  vdc->add_option("--s", vdc_o.s, "Exponent s")->capture_default_str();
  add_grid(vdc, vdc_o);
  vdc->add_option("--k-max", vdc_o.k_max, "Largest dyadic block")->capture_default_str();
  vdc->add_option("--q", vdc_o.q, "Derivative orders")->capture_default_str();
  vdc->add_option("--c", vdc_o.c, "Bound constant")->capture_default_str();
  add_out(vdc, vdc_o, true);
  add_threads(vdc, vdc_o);

  Options& records_o = opts.emplace_back();
  auto* records = app.add_subcommand("records", "Record martingale moments");
  records->add_option("--n", records_o.n, "Index n (0: limit)")->capture_default_str();
  records->add_option("--samples", records_o.samples, "Monte Carlo trials")->default_val(100000);
  records->add_option("--seed", records_o.seed, "Seed")->capture_default_str();
  add_out(records, records_o, false);
  add_threads(records, records_o);

  Options& sob_o = opts.emplace_back();
  auto* sob = app.add_subcommand("sobolev", "Sobolev energy of the law up to T");
  add_series(sob, sob_o);
  sob->add_option("--gamma", sob_o.gamma, "Sobolev exponent")->capture_default_str();
  sob->add_option("--t-max", sob_o.t_max, "Upper limit T")->capture_default_str();
  sob->add_option("--tol", sob_o.tol, "Quadrature tolerance")->capture_default_str();
  add_out(sob, sob_o, false);
  add_threads(sob, sob_o);

  Options& mert_o = opts.emplace_back();
  auto* mert = app.add_subcommand("mertens", "Mertens products and square-free density");
  mert->add_option("--limit", mert_o.limit, "Sieve limit")->capture_default_str();
  add_out(mert, mert_o, false);

  Options& sing_o = opts.emplace_back();
  auto* sing = app.add_subcommand("singularity", "Prime series mass near the set B_N");
  sing->add_option("--s", sing_o.s, "Exponent s")->capture_default_str();
  sing->add_option("--epsilon", sing_o.epsilon, "Exponent epsilon")->capture_default_str();
  sing->add_option("--n-trunc", sing_o.n_trunc, "N")->default_val(1000000);
  sing->add_option("--samples", sing_o.samples, "Monte Carlo trials")->capture_default_str();
  sing->add_option("--seed", sing_o.seed, "Seed")->capture_default_str();
  auto* sing_limit = sing->add_option("--limit", sing_o.limit, "Sampling truncation (default 100 N)");
  add_out(sing, sing_o, true);
  add_threads(sing, sing_o);

  Options& ap_o = opts.emplace_back();
  auto* ap = app.add_subcommand("ap-check", "Check the hypotheses on prime coefficients a_p");
  ap->add_option("--family", ap_o.family, "power | one | zero")->capture_default_str();
  ap->add_option("--s", ap_o.s, "Exponent for the power family")->capture_default_str();
  ap->add_option("--limit", ap_o.limit, "Sieve limit")->default_val(10000000);
  add_out(ap, ap_o, false);

  Options& verify_o = opts.emplace_back();
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--criterion", verify_o.criteria, "Criterion ids (default all)");
  verify->add_option("--work-dir", verify_o.work_dir, "Scratch directory");
  add_threads(verify, verify_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*fig) cmd_figure1(fig_o, s_values, !s_values.empty());
    else if (*sample) cmd_sample(sample_o);
    else if (*exact) cmd_exact(exact_o);
    else if (*charfn) cmd_charfn(charfn_o);
    else if (*decay) cmd_decay_fit(decay_o);
    else if (*vdc) cmd_vdc_sweep(vdc_o);
    else if (*records) cmd_records(records_o);
    else if (*sob) cmd_sobolev(sob_o);
    else if (*mert) cmd_mertens(mert_o);
    else if (*sing) cmd_singularity(sing_o, sing_limit->count() > 0);
    else if (*ap) cmd_ap_check(ap_o);
    else if (*verify) return cmd_verify(verify_o);
  } catch (const Failure& f) {
    const char* msg = drs_last_error();
    if (msg[0] != '\0') {
      std::cerr << "drs: " << drs_status_name(f.status) << ": " << msg << "\n";
    }
    return drs_status_is_validation(f.status) ? kExitValidation : kExitRuntime;
  }
  return 0;
}
