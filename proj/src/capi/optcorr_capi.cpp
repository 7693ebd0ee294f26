#include "optcorr/optcorr.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "core/errors.hpp"
#include "core/named_states.hpp"
#include "core/ray_classifier.hpp"
#include "core/serialization.hpp"
#include "core/verification.hpp"

using namespace optcorr;

struct optcorr_state {
  DensityMatrix rho;
};
struct optcorr_discovery {
  DiscoveryResult result;
  std::string label;
};
struct optcorr_estimate {
  MeasureEstimate est;
};
struct optcorr_report {
  VerifyReport report;
};

namespace {

thread_local std::string last_error;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
optcorr_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return OPTCORR_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<optcorr_status>(static_cast<int>(e.code()));
  } catch (const IoError& e) {
    last_error = e.what();
    return OPTCORR_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return OPTCORR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return OPTCORR_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

Alpha alpha_of(const double a[7]) {
  Alpha out;
  for (std::size_t i = 0; i < kAlphaSlots; ++i) out[i] = a[i];
  return out;
}

Json config_of(const char* config_json) {
  if (!config_json || !*config_json) return Json::object();
  try {
    return Json::parse(config_json);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("config is not valid JSON: ") + e.what());
  }
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open '") + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

extern "C" {

const char* optcorr_version(void) { return kVersion; }

const char* optcorr_last_error(void) { return last_error.c_str(); }

const char* optcorr_status_name(optcorr_status status) {
  switch (status) {
    case OPTCORR_OK: return "ok";
    case OPTCORR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case OPTCORR_ERR_OVERLAP: return "overlapping subsets";
    case OPTCORR_ERR_EMPTY_ARGUMENT: return "empty argument";
    case OPTCORR_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case OPTCORR_ERR_ITERATION_LIMIT: return "iteration limit";
    case OPTCORR_ERR_INFINITE_MEASURE: return "infinite measure";
    case OPTCORR_ERR_PARSE: return "parse error";
    case OPTCORR_ERR_INVALID_STATE: return "invalid state";
    case OPTCORR_ERR_UNKNOWN_NAME: return "unknown name";
    case OPTCORR_ERR_UNCOVERED: return "uncovered";
    case OPTCORR_ERR_NUMERICAL: return "numerical failure";
    case OPTCORR_ERR_IO: return "i/o error";
    case OPTCORR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void optcorr_string_free(char* s) { std::free(s); }

optcorr_status optcorr_state_named(const char* spec, optcorr_state** out) {
  return guard([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new optcorr_state{named_state(spec)};
  });
}

optcorr_status optcorr_state_from_json(const char* json, optcorr_state** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new optcorr_state{state_from_json(json)};
  });
}

optcorr_status optcorr_state_load(const char* path, optcorr_state** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new optcorr_state{state_from_json(read_file(path))};
  });
}

optcorr_status optcorr_state_to_json(const optcorr_state* state, char** out) {
  return guard([&] {
    require(state, "state");
    require(out, "out");
    *out = dup(state_to_json(state->rho));
  });
}

optcorr_status optcorr_state_save(const optcorr_state* state, const char* path) {
  return guard([&] {
    require(state, "state");
    require(path, "path");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError(std::string("cannot write '") + path + "'");
    f << state_to_json(state->rho);
  });
}

int optcorr_state_total_dim(const optcorr_state* state) { return state ? state->rho.total_dim() : 0; }

optcorr_status optcorr_state_mutual_information(const optcorr_state* state, double* out) {
  return guard([&] {
    require(state, "state");
    require(out, "out");
    if (state->rho.labels() != std::vector<std::string>{"A", "B"})
      fail(ErrorCode::InvalidArgument, "state must have exactly the subsystems A and B");
    *out = mutual_information(state->rho, "A", "B");
  });
}

void optcorr_state_free(optcorr_state* state) { delete state; }

optcorr_status optcorr_named_alpha(const char* name, double alpha[7]) {
  return guard([&] {
    require(name, "name");
    require(alpha, "alpha");
    const Alpha a = named_alpha(name);
    for (std::size_t i = 0; i < kAlphaSlots; ++i) alpha[i] = a[i];
  });
}

int optcorr_finiteness_check(const double alpha[7]) { return alpha && finiteness_check(alpha_of(alpha)) ? 1 : 0; }

void optcorr_dual_alpha(const double alpha[7], double out[7]) {
  if (!alpha || !out) return;
  const Alpha b = dual_alpha(alpha_of(alpha));
  for (std::size_t i = 0; i < kAlphaSlots; ++i) out[i] = b[i];
}

optcorr_status optcorr_discover(const char* cone, int finite, int classify_rows, uint64_t seed,
                                optcorr_discovery** out) {
  return guard([&] {
    require(cone, "cone");
    require(out, "out");
    const ConeSelector sel = ConeSelector::parse(cone, finite != 0);
    DiscoveryResult r = alpha_cone(sel);
    if (classify_rows) classify(r, default_classifier_samples(seed));
    *out = new optcorr_discovery{std::move(r), sel.label()};
  });
}

size_t optcorr_discovery_row_count(const optcorr_discovery* d) { return d ? d->result.table_rows().size() : 0; }

optcorr_status optcorr_discovery_row(const optcorr_discovery* d, size_t i, int64_t row[7]) {
  return guard([&] {
    require(d, "discovery");
    require(row, "row");
    const auto rows = d->result.table_rows();
    if (i >= rows.size()) fail(ErrorCode::InvalidArgument, "row index out of range");
    for (std::size_t k = 0; k < kAlphaSlots; ++k) {
      if (!rows[i][k].fits_slong_p()) fail(ErrorCode::InvalidArgument, "entry does not fit in int64");
      row[k] = rows[i][k].get_si();
    }
  });
}

const char* optcorr_discovery_label(const optcorr_discovery* d) { return d ? d->label.c_str() : ""; }

optcorr_status optcorr_discovery_compare_paper(const optcorr_discovery* d, int* match, char** diff) {
  return guard([&] {
    require(d, "discovery");
    require(match, "match");
    const auto cmp = compare_rows(d->result.table_rows(), reference_rows(d->result.cone));
    *match = cmp.match ? 1 : 0;
    if (diff) {
      std::ostringstream s;
      for (const auto& r : cmp.missing) s << "- " << int_row_to_json(r).dump() << "\n";
      for (const auto& r : cmp.unexpected) s << "+ " << int_row_to_json(r).dump() << "\n";
      *diff = dup(s.str());
    }
  });
}

optcorr_status optcorr_discovery_render(const optcorr_discovery* d, optcorr_format format, const char* config_json,
                                       char** out) {
  return guard([&] {
    require(d, "discovery");
    require(out, "out");
    const Json config = config_of(config_json);
    switch (format) {
      case OPTCORR_FORMAT_JSON: *out = dup(discovery_to_json(d->result, config).dump(2) + "\n"); break;
      case OPTCORR_FORMAT_CSV: *out = dup(discovery_to_csv(d->result, config)); break;
      case OPTCORR_FORMAT_TABLE: *out = dup(discovery_to_table(d->result)); break;
      default: fail(ErrorCode::InvalidArgument, "unknown format");
    }
  });
}

void optcorr_discovery_free(optcorr_discovery* d) { delete d; }

void optcorr_estimator_config_default(optcorr_estimator_config* config) {
  if (!config) return;
  const EstimatorConfig c;
  *config = {c.d_v, c.d_f, c.restarts, c.max_iters, c.seed, c.threads};
}

optcorr_status optcorr_evaluate(const double alpha[7], const optcorr_state* state,
                                const optcorr_estimator_config* config, optcorr_estimate** out) {
  return guard([&] {
    require(alpha, "alpha");
    require(state, "state");
    require(out, "out");
    EstimatorConfig c;
    if (config) {
      c.d_v = config->d_v;
      c.d_f = config->d_f;
      c.restarts = config->restarts;
      c.max_iters = config->max_iters;
      c.seed = config->seed;
      c.threads = config->threads;
    }
    const Alpha a = alpha_of(alpha);
    if (state->rho.labels() != std::vector<std::string>{"A", "B"})
      fail(ErrorCode::InvalidArgument, "state must have exactly the subsystems A and B");
    *out = new optcorr_estimate{estimate_measure(a, state->rho, c)};
  });
}

double optcorr_estimate_value(const optcorr_estimate* e) { return e ? e->est.value : 0.0; }

int optcorr_estimate_lower_bound(const optcorr_estimate* e, double* out) {
  if (!e || !e->est.lower_bound) return 0;
  if (out) *out = *e->est.lower_bound;
  return 1;
}

int optcorr_estimate_converged(const optcorr_estimate* e) { return e && e->est.converged ? 1 : 0; }

int optcorr_estimate_d_v(const optcorr_estimate* e) { return e ? e->est.d_v : 0; }

optcorr_status optcorr_estimate_to_json(const optcorr_estimate* e, const char* config_json, char** out) {
  return guard([&] {
    require(e, "estimate");
    require(out, "out");
    *out = dup(estimate_to_json(e->est, config_of(config_json)).dump(2) + "\n");
  });
}

void optcorr_estimate_free(optcorr_estimate* e) { delete e; }

optcorr_status optcorr_verify(const char* suite, uint64_t seed, int threads, optcorr_report** out) {
  return guard([&] {
    require(suite, "suite");
    require(out, "out");
    *out = new optcorr_report{run_suite(suite, {seed, threads < 1 ? 1 : threads})};
  });
}

int optcorr_report_passed(const optcorr_report* r) { return r && r->report.passed() ? 1 : 0; }

size_t optcorr_report_count(const optcorr_report* r) { return r ? r->report.assertions.size() : 0; }

optcorr_status optcorr_report_text(const optcorr_report* r, char** out) {
  return guard([&] {
    require(r, "report");
    require(out, "out");
    *out = dup(r->report.text());
  });
}

optcorr_status optcorr_report_json(const optcorr_report* r, const char* config_json, char** out) {
  return guard([&] {
    require(r, "report");
    require(out, "out");
    *out = dup(r->report.to_json(config_of(config_json)).dump(2) + "\n");
  });
}

void optcorr_report_free(optcorr_report* r) { delete r; }

}  // extern "C"
