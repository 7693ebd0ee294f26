#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "optcorr/optcorr.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  optcorr_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(optcorr_version()).rfind("optcorr ", 0) == 0);
  CHECK(std::string(optcorr_status_name(OPTCORR_ERR_INFINITE_MEASURE)) == "infinite measure");
}

TEST_CASE("states through the C API") {
  optcorr_state* s = nullptr;
  REQUIRE(optcorr_state_named("bell", &s) == OPTCORR_OK);
  CHECK(optcorr_state_total_dim(s) == 4);
  double mi = 0;
  CHECK(optcorr_state_mutual_information(s, &mi) == OPTCORR_OK);
  CHECK(mi == doctest::Approx(2.0));
  char* json = nullptr;
  REQUIRE(optcorr_state_to_json(s, &json) == OPTCORR_OK);
  optcorr_state* t = nullptr;
  CHECK(optcorr_state_from_json(json, &t) == OPTCORR_OK);
  optcorr_string_free(json);
  optcorr_state_free(t);
  optcorr_state_free(s);

  optcorr_state* bad = nullptr;
  CHECK(optcorr_state_named("classical:0.5,0.6", &bad) == OPTCORR_ERR_INVALID_ARGUMENT);
  CHECK(std::string(optcorr_last_error()).find("sum to 1") != std::string::npos);
  CHECK(optcorr_state_from_json("{\"dims\":{\"A\":2},\"matrix\":[[[2,0],[0,0]],[[0,0],[0,0]]]}", &bad) ==
        OPTCORR_ERR_INVALID_STATE);
  CHECK(std::string(optcorr_last_error()).find("trace") != std::string::npos);
  CHECK(optcorr_state_load("/nonexistent/state.json", &bad) == OPTCORR_ERR_IO);
  CHECK(optcorr_state_named(nullptr, &bad) == OPTCORR_ERR_INVALID_ARGUMENT);
}

TEST_CASE("discovery through the C API") {
  optcorr_discovery* d = nullptr;
  REQUIRE(optcorr_discover("10", 1, 0, 0, &d) == OPTCORR_OK);
  CHECK(optcorr_discovery_row_count(d) == 7);
  CHECK(std::string(optcorr_discovery_label(d)) == "C∩10");
  int match = 0;
  char* diff = nullptr;
  CHECK(optcorr_discovery_compare_paper(d, &match, &diff) == OPTCORR_OK);
  CHECK(match == 1);
  CHECK(take(diff).empty());
  int64_t row[7];
  CHECK(optcorr_discovery_row(d, 0, row) == OPTCORR_OK);
  CHECK(optcorr_discovery_row(d, 99, row) == OPTCORR_ERR_INVALID_ARGUMENT);
  char* csv = nullptr;
  CHECK(optcorr_discovery_render(d, OPTCORR_FORMAT_CSV, "{\"seed\":1}", &csv) == OPTCORR_OK);
  CHECK(take(csv).find("\"seed\":1") != std::string::npos);
  char* junk = nullptr;
  CHECK(optcorr_discovery_render(d, OPTCORR_FORMAT_JSON, "{not json", &junk) == OPTCORR_ERR_PARSE);
  optcorr_discovery_free(d);
  CHECK(optcorr_discover("22", 0, 0, 0, &d) == OPTCORR_ERR_INVALID_ARGUMENT);
}

TEST_CASE("evaluation through the C API") {
  optcorr_state* s = nullptr;
  REQUIRE(optcorr_state_named("classical:0.5,0.5", &s) == OPTCORR_OK);
  double alpha[7];
  REQUIRE(optcorr_named_alpha("R", alpha) == OPTCORR_OK);
  CHECK(optcorr_finiteness_check(alpha) == 1);
  optcorr_estimator_config c;
  optcorr_estimator_config_default(&c);
  CHECK(c.restarts == 8);
  CHECK(c.max_iters == 2000);
  c.d_v = 2;
  optcorr_estimate* e = nullptr;
  REQUIRE(optcorr_evaluate(alpha, s, &c, &e) == OPTCORR_OK);
  CHECK(std::abs(optcorr_estimate_value(e) - 0.5) <= 1e-3);
  double lb = 0;
  CHECK(optcorr_estimate_lower_bound(e, &lb) == 1);
  CHECK(lb == doctest::Approx(0.5));
  CHECK(optcorr_estimate_d_v(e) == 2);
  char* json = nullptr;
  CHECK(optcorr_estimate_to_json(e, nullptr, &json) == OPTCORR_OK);
  CHECK(take(json).find("\"witness\"") != std::string::npos);
  optcorr_estimate_free(e);

  const double minus_v[7] = {0, 0, -1, 0, 0, 0, 0};
  CHECK(optcorr_finiteness_check(minus_v) == 0);
  CHECK(optcorr_evaluate(minus_v, s, &c, &e) == OPTCORR_ERR_INFINITE_MEASURE);
  CHECK(optcorr_named_alpha("T", alpha) == OPTCORR_ERR_UNKNOWN_NAME);
  double dual[7];
  const double p[7] = {0, 0, 0, 0, 1, 0, 0};
  optcorr_dual_alpha(p, dual);
  CHECK(dual[5] == 1.0);
  optcorr_state_free(s);
}

TEST_CASE("verification through the C API") {
  optcorr_report* r = nullptr;
  REQUIRE(optcorr_verify("domination", 0, 1, &r) == OPTCORR_OK);
  CHECK(optcorr_report_passed(r) == 1);
  CHECK(optcorr_report_count(r) == 2);
  char* text = nullptr;
  CHECK(optcorr_report_text(r, &text) == OPTCORR_OK);
  CHECK(take(text).find("PASS domination") != std::string::npos);
  optcorr_report_free(r);
  CHECK(optcorr_verify("nope", 0, 1, &r) == OPTCORR_ERR_UNKNOWN_NAME);
}
