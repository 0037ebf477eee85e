#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "drs/drs.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  drs_free_string(s);
  return out;
}

}  // namespace

TEST_CASE("status mapping and last error") {
  drs_params bad{1.0, 1.0, DRS_VARIANT_LOG_PRODUCT};
  CHECK(drs_validate(&bad) == DRS_OK);
  bad.s = 2.0;
  CHECK(drs_validate(&bad) == DRS_ERR_INVALID_VARIANT);
  CHECK(std::strlen(drs_last_error()) > 0);
  CHECK(drs_status_is_validation(DRS_ERR_INVALID_VARIANT));
  CHECK_FALSE(drs_status_is_validation(DRS_ERR_IO));

  drs_params neg{-1.0, 1.0, DRS_VARIANT_ALL};
  CHECK(drs_validate(&neg) == DRS_ERR_DOMAIN);
  CHECK(drs_validate(nullptr) == DRS_ERR_INVALID_ARGUMENT);

  drs_variant v;
  CHECK(drs_parse_variant("primes", &v) == DRS_OK);
  CHECK(v == DRS_VARIANT_PRIMES);
  CHECK(drs_parse_variant("nope", &v) == DRS_ERR_INVALID_ARGUMENT);

  drs_class c;
  drs_params div{0.3, 0.5, DRS_VARIANT_ALL};
  CHECK(drs_classify(&div, &c) == DRS_OK);
  CHECK(c == DRS_CLASS_DIVERGES);
  CHECK(std::strlen(drs_last_error()) == 0);
}

TEST_CASE("exact distribution handle") {
  drs_params p{2.0, 1.0, DRS_VARIANT_ALL};
  drs_exact_dist* d = nullptr;
  REQUIRE(drs_exact_enumerate(&p, 10, &d) == DRS_OK);
  double total = 0.0;
  for (size_t i = 0; i < drs_exact_size(d); ++i) total += drs_exact_probs(d)[i];
  CHECK(total == doctest::Approx(1.0));
  double m = 0.0;
  CHECK(drs_exact_moment(d, 1, &m) == DRS_OK);
  double ref = 0.0;
  for (int n = 1; n <= 10; ++n) ref += std::pow(n, -3.0);
  CHECK(m == doctest::Approx(ref));

  double re, im, v, err;
  REQUIRE(drs_exact_charfn(d, 5.0, &re, &im) == DRS_OK);
  REQUIRE(drs_modulus_sq_product(&p, 5.0, 10, &v, &err) == DRS_OK);
  CHECK(std::abs(re * re + im * im - v) < 1e-12);

  const nlohmann::json j = nlohmann::json::parse([&] {
    char* s = nullptr;
    REQUIRE(drs_exact_json(d, &s) == DRS_OK);
    return take(s);
  }());
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "exact");
  CHECK(j["config"]["N"] == 10);
  CHECK(j["result"]["atom_count"] == drs_exact_size(d));
  drs_exact_free(d);
  drs_exact_free(nullptr);

  CHECK(drs_exact_enumerate(&p, 40, &d) == DRS_ERR_CAPACITY);
}

TEST_CASE("samples through the C API are thread invariant") {
  drs_params p{1.4, 1.0, DRS_VARIANT_ALL};
  drs_sample_batch *a = nullptr, *b = nullptr;
  REQUIRE(drs_sample_series(&p, 2000, 70000, 3, 1, &a) == DRS_OK);
  REQUIRE(drs_sample_series(&p, 2000, 70000, 3, 8, &b) == DRS_OK);
  char *ca = nullptr, *cb = nullptr;
  REQUIRE(drs_sample_csv(a, 1e-3, &ca) == DRS_OK);
  REQUIRE(drs_sample_csv(b, 1e-3, &cb) == DRS_OK);
  const std::string sa = take(ca), sb = take(cb);
  CHECK(sa == sb);
  CHECK(sa.rfind("bin_left,density\n", 0) == 0);
  CHECK(sa.find('\r') == std::string::npos);
  CHECK_FALSE(drs_sample_divergent(a));

  char* js = nullptr;
  REQUIRE(drs_sample_json(a, 0.0, &js) == DRS_OK);
  const nlohmann::json j = nlohmann::json::parse(take(js));
  CHECK_FALSE(j["config"].contains("threads"));
  CHECK(j["config"]["seed"] == 3);
  drs_sample_free(a);
  drs_sample_free(b);
}

TEST_CASE("profile handle") {
  drs_params p{1.0, 1.0, DRS_VARIANT_ALL};
  drs_profile* pr = nullptr;
  REQUIRE(drs_charfn_profile(&p, 1.0, 100.0, 3, 1e-3, 2, &pr) == DRS_OK);
  CHECK(drs_profile_size(pr) == 7);
  drs_profile_point pt;
  REQUIRE(drs_profile_get(pr, 6, &pt) == DRS_OK);
  CHECK(pt.t == doctest::Approx(100.0));
  CHECK(drs_profile_get(pr, 7, &pt) == DRS_ERR_INVALID_ARGUMENT);
  drs_profile_free(pr);
  CHECK(drs_charfn_profile(&p, 0.0, 100.0, 3, 1e-3, 2, &pr) == DRS_ERR_DOMAIN);
}

TEST_CASE("record and prime reports") {
  double v = 0.0;
  REQUIRE(drs_second_moment_product(1000000, &v) == DRS_OK);
  CHECK(std::abs(v - drs_limit_constant()) < 1e-9);

  drs_prime_table* t = nullptr;
  REQUIRE(drs_sieve(1000, &t) == DRS_OK);
  uint64_t count = 0;
  CHECK(drs_prime_count(t, 1000, &count) == DRS_OK);
  CHECK(count == 168);
  int mu = 0;
  CHECK(drs_mobius(t, 30, &mu) == DRS_OK);
  CHECK(mu == -1);
  drs_prime_table_free(t);

  char* s = nullptr;
  REQUIRE(drs_mertens_json(100000, &s) == DRS_OK);
  const nlohmann::json j = nlohmann::json::parse(take(s));
  CHECK(j["result"]["mertens"].size() == 3);
  CHECK(j["result"]["prime_count"] == 9592);

  REQUIRE(drs_ap_check_json("one", 0.0, 100000, &s) == DRS_OK);
  const nlohmann::json a = nlohmann::json::parse(take(s));
  CHECK(a["result"]["divergent_support"] == true);
  CHECK(drs_ap_check_json("sometimes", 1.0, 1000, &s) == DRS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("criterion table") {
  CHECK(drs_criterion_count() == 11);
  drs_criterion_result r;
  CHECK(drs_verify_criterion(0, 1, nullptr, &r) != DRS_OK);
  REQUIRE(drs_verify_criterion(8, 1, nullptr, &r) == DRS_OK);
  CHECK(r.id == 8);
  CHECK(r.passed == 1);
  CHECK(std::strlen(r.name) > 0);
}
