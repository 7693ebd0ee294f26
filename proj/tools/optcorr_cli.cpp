// optcorr command-line front end. Talks to the library through the C API only.
//
// Exit codes: 0 success, 1 verification failure or table mismatch,
// 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optcorr/optcorr.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int code;
};

std::string take(char* s) {
  std::string out = s ? s : "";
  optcorr_string_free(s);
  return out;
}

void check(optcorr_status st, const std::string& context) {
  if (st == OPTCORR_OK) return;
  std::cerr << "error: " << context << ": " << optcorr_last_error() << " [" << optcorr_status_name(st) << "]\n";
  throw Failure{kExitUsage};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write '" << path << "'\n";
    throw Failure{kExitUsage};
  }
  f << text;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

constexpr const char* kStateHelp =
    "Named states: bell | classical:p1,p2,... | antisym:d | symmetric-random:d,seed |\n"
    "pure-random:d,seed | mixed-random:dA,dB,seed | local-random:dA,dB,seed |\n"
    "product:<spec>;<spec> (A and B of the factors are grouped as A1A2, B1B2).";

// ---- discover ----

struct DiscoverOpts {
  std::string cone;
  bool finite = false;
  std::string expect;
  std::string format = "table";
  std::string output;
  std::string paper_tables;
  bool no_classify = false;
  std::uint64_t seed = 0;
};

void write_paper_tables(const std::string& dir, std::uint64_t seed, bool classify) {
  const std::vector<std::pair<std::string, bool>> files = {{"table1.txt", false}, {"table2.txt", true}};
  for (const auto& [name, finite] : files) {
    std::string text;
    for (const char* cone : {"00", "10"}) {
      Handle<optcorr_discovery, optcorr_discovery_free> d;
      check(optcorr_discover(cone, finite, classify, seed, &d.p), "discover");
      char* s = nullptr;
      check(optcorr_discovery_render(d.p, OPTCORR_FORMAT_TABLE, nullptr, &s), "render");
      text += take(s) + "\n";
    }
    write_output(dir + "/" + name, text);
  }
}

int run_discover(const DiscoverOpts& o) {
  Json config;
  config["command"] = "discover";
  config["cone"] = o.cone;
  config["finite"] = o.finite;
  config["classify"] = !o.no_classify;
  config["seed"] = o.seed;
  config["expect"] = o.expect;
  config["format"] = o.format;

  Handle<optcorr_discovery, optcorr_discovery_free> d;
  check(optcorr_discover(o.cone.c_str(), o.finite, !o.no_classify, o.seed, &d.p), "discover");
  const optcorr_format fmt = o.format == "json" ? OPTCORR_FORMAT_JSON
                             : o.format == "csv" ? OPTCORR_FORMAT_CSV
                                                 : OPTCORR_FORMAT_TABLE;
  char* s = nullptr;
  check(optcorr_discovery_render(d.p, fmt, config.dump().c_str(), &s), "render");
  write_output(o.output, take(s));
  if (!o.paper_tables.empty()) write_paper_tables(o.paper_tables, o.seed, !o.no_classify);

  const std::size_t n = optcorr_discovery_row_count(d.p);
  std::cerr << optcorr_discovery_label(d.p) << ": " << n << " rays\n";
  if (o.expect == "paper") {
    int match = 0;
    char* diff = nullptr;
    check(optcorr_discovery_compare_paper(d.p, &match, &diff), "compare");
    const std::string text = take(diff);
    if (!match) {
      std::cerr << "mismatch against the reference table:\n" << text;
      return kExitMismatch;
    }
    std::cerr << "matches the reference table\n";
  }
  return 0;
}

// ---- evaluate ----

struct EvaluateOpts {
  std::string measure;
  std::vector<double> alpha;
  std::string named;
  std::string state_file;
  int dv = 0;
  int df = 0;
  int restarts = 8;
  int max_iters = 2000;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output;
};

int run_evaluate(const EvaluateOpts& o) {
  if (o.measure.empty() == o.alpha.empty()) {
    std::cerr << "error: give exactly one of --measure or --alpha\n";
    return kExitUsage;
  }
  if (o.named.empty() == o.state_file.empty()) {
    std::cerr << "error: give exactly one of --named or --state-file\n";
    return kExitUsage;
  }
  double alpha[7];
  if (!o.measure.empty()) {
    check(optcorr_named_alpha(o.measure.c_str(), alpha), "measure");
  } else {
    if (o.alpha.size() != 7) {
      std::cerr << "error: --alpha takes 7 values (A,B,V,AB,AV,BV,ABV)\n";
      return kExitUsage;
    }
    std::copy(o.alpha.begin(), o.alpha.end(), alpha);
  }

  Handle<optcorr_state, optcorr_state_free> st;
  if (!o.named.empty()) check(optcorr_state_named(o.named.c_str(), &st.p), "state '" + o.named + "'");
  else check(optcorr_state_load(o.state_file.c_str(), &st.p), "state file '" + o.state_file + "'");

  optcorr_estimator_config c;
  optcorr_estimator_config_default(&c);
  c.d_v = o.dv;
  c.d_f = o.df;
  c.restarts = o.restarts;
  c.max_iters = o.max_iters;
  c.seed = o.seed;
  c.threads = o.threads;

  Json config;
  config["command"] = "evaluate";
  if (!o.measure.empty()) config["measure"] = o.measure;
  config["alpha"] = std::vector<double>(alpha, alpha + 7);
  if (!o.named.empty()) config["named"] = o.named;
  else config["state_file"] = o.state_file;
  config["d_v"] = o.dv;
  config["d_f"] = o.df;
  config["restarts"] = o.restarts;
  config["max_iters"] = o.max_iters;
  config["seed"] = o.seed;
  config["threads"] = o.threads;

  Handle<optcorr_estimate, optcorr_estimate_free> e;
  check(optcorr_evaluate(alpha, st.p, &c, &e.p), "evaluate");
  char* s = nullptr;
  check(optcorr_estimate_to_json(e.p, config.dump().c_str(), &s), "serialize");
  write_output(o.output, take(s));

  const double value = optcorr_estimate_value(e.p);
  double lb = 0.0;
  char line[200];
  std::snprintf(line, sizeof line, "value       %.6f  (upper bound at d_V = %d%s)\n", value, optcorr_estimate_d_v(e.p),
                optcorr_estimate_converged(e.p) ? "" : ", not converged");
  std::cerr << line;
  if (optcorr_estimate_lower_bound(e.p, &lb)) {
    std::snprintf(line, sizeof line, "lower bound %.6f\ngap         %.6f\n", lb, value - lb);
    std::cerr << line;
  } else {
    std::cerr << "lower bound none certified\n";
  }
  return 0;
}

// ---- verify ----

struct VerifyOpts {
  std::string suite = "all";
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output;
  std::string json;
};

int run_verify(const VerifyOpts& o) {
  Json config;
  config["command"] = "verify";
  config["suite"] = o.suite;
  config["seed"] = o.seed;
  config["threads"] = o.threads;

  Handle<optcorr_report, optcorr_report_free> r;
  check(optcorr_verify(o.suite.c_str(), o.seed, o.threads, &r.p), "verify");
  char* text = nullptr;
  check(optcorr_report_text(r.p, &text), "report");
  write_output(o.output, "# " + std::string(optcorr_version()) + " " + config.dump() + "\n" + take(text));
  std::string sidecar = o.json;
  if (sidecar.empty() && !o.output.empty() && o.output != "-") sidecar = o.output + ".json";
  if (!sidecar.empty()) {
    char* j = nullptr;
    check(optcorr_report_json(r.p, config.dump().c_str(), &j), "report");
    write_output(sidecar, take(j));
  }
  return optcorr_report_passed(r.p) ? 0 : kExitMismatch;
}

// ---- state ----

struct StateOpts {
  std::string named;
  std::string output;
};

int run_state(const StateOpts& o) {
  Handle<optcorr_state, optcorr_state_free> st;
  check(optcorr_state_named(o.named.c_str(), &st.p), "state '" + o.named + "'");
  char* s = nullptr;
  check(optcorr_state_to_json(st.p, &s), "serialize");
  write_output(o.output, take(s));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimized bipartite correlation measures: monotone-cone discovery, estimation, verification."};
  app.set_version_flag("--version", std::string(optcorr_version()));
  app.require_subcommand(1);
  app.footer(kStateHelp);

  DiscoverOpts d;
  auto* discover = app.add_subcommand("discover", "Extreme rays of a monotone cone in alpha-space");
  discover->add_option("--cone", d.cone, "Monotonicity digits: 00, 10, 01 or 11")
      ->required()
      ->check(CLI::IsMember({"00", "10", "01", "11"}));
  discover->add_flag("--finite", d.finite, "Intersect with the finiteness halfspace");
  discover->add_option("--expect", d.expect, "Compare with embedded reference rows")->check(CLI::IsMember({"paper"}));
  discover->add_option("--format", d.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  discover->add_option("--output,-o", d.output, "Output file (default stdout)");
  discover->add_option("--paper-tables", d.paper_tables, "Also write table1.txt and table2.txt into this directory");
  discover->add_flag("--no-classify", d.no_classify, "Skip the advisory ray classification");
  discover->add_option("--seed", d.seed, "Seed for classification samples");

  EvaluateOpts e;
  auto* evaluate = app.add_subcommand("evaluate", "Upper-bound estimate of E_alpha for a bipartite state");
  evaluate->add_option("--measure", e.measure, "Named measure")->check(CLI::IsMember({"P", "Q", "R", "sq"}));
  evaluate->add_option("--alpha", e.alpha, "Seven coefficients A,B,V,AB,AV,BV,ABV")->delimiter(',')->allow_extra_args(false);
  evaluate->add_option("--named", e.named, "Named state (see below)");
  evaluate->add_option("--state-file", e.state_file, "State JSON file");
  evaluate->add_option("--dv", e.dv, "Extension dimension d_V (default d_A*d_B)")->check(CLI::PositiveNumber);
  evaluate->add_option("--df", e.df, "Environment dimension d_F (default d_V*d_E)")->check(CLI::PositiveNumber);
  evaluate->add_option("--restarts", e.restarts, "Random restarts")->check(CLI::NonNegativeNumber);
  evaluate->add_option("--max-iters", e.max_iters, "Iterations per restart")->check(CLI::NonNegativeNumber);
  evaluate->add_option("--seed", e.seed, "Seed");
  evaluate->add_option("--threads", e.threads, "Worker threads for restarts")->check(CLI::PositiveNumber);
  evaluate->add_option("--output,-o", e.output, "Output file (default stdout)");
  evaluate->footer(kStateHelp);

  VerifyOpts v;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", v.suite, "Suite name")
      ->check(CLI::IsMember({"tables", "bounds", "additivity", "monotonicity", "domination", "duality",
                             "closed-forms", "all"}));
  verify->add_option("--seed", v.seed, "Seed");
  verify->add_option("--threads", v.threads, "Worker threads for restarts")->check(CLI::PositiveNumber);
  verify->add_option("--output,-o", v.output, "Report file (default stdout)");
  verify->add_option("--json", v.json, "JSON sidecar path (default <output>.json)");

  StateOpts s;
  auto* state = app.add_subcommand("state", "Write a named state as a state file");
  state->add_option("--named", s.named, "Named state")->required();
  state->add_option("--output,-o", s.output, "Output file (default stdout)");
  state->footer(kStateHelp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*discover) return run_discover(d);
    if (*evaluate) return run_evaluate(e);
    if (*verify) return run_verify(v);
    if (*state) return run_state(s);
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitUsage;
}
