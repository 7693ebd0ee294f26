#include "core/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "core/errors.hpp"
#include "core/named_states.hpp"
#include "core/ray_classifier.hpp"

namespace optcorr {

namespace {

class Recorder {
 public:
  Recorder(std::string suite, std::vector<Assertion>& out) : suite_(std::move(suite)), out_(out) {}

  void le(const std::string& name, double measured, double bound) {
    push(name, measured, bound, "<=", bound - measured);
  }
  void ge(const std::string& name, double measured, double bound) {
    push(name, measured, bound, ">=", measured - bound);
  }
  void within(const std::string& name, double measured, double lo, double hi) {
    ge(name + " lower", measured, lo - 1e-9);
    le(name + " upper", measured, hi);
  }
  void near(const std::string& name, double measured, double target, double tol) {
    push(name, std::abs(measured - target), tol, "<=", tol - std::abs(measured - target));
  }
  void holds(const std::string& name, bool ok) { push(name, ok ? 1.0 : 0.0, 1.0, "==", ok ? 0.0 : -1.0); }

 private:
  void push(const std::string& name, double measured, double bound, const char* rel, double slack) {
    out_.push_back({suite_, name, measured, bound, rel, slack, slack >= 0.0});
  }
  std::string suite_;
  std::vector<Assertion>& out_;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double entropy_of(const DensityMatrix& rho, const std::string& label) {
  return von_neumann_entropy(partial_trace(rho, {label}));
}

EstimatorConfig estimator(const VerifyConfig& vc, int d_v, std::uint64_t salt) {
  EstimatorConfig c;
  c.d_v = d_v;
  c.seed = vc.seed * 7919 + salt;
  c.threads = vc.threads;
  return c;
}

DensityMatrix random_extension(const DensityMatrix& rho, int d_v, int d_f, Rng& rng) {
  const Purification p = purify(rho);
  return extension_from_ansatz(p, random_ansatz(p.d_e, d_v, std::max(d_f, 1), rng));
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double t) {
  return DensityMatrix(a.subsystems(), t * a.matrix() + (1.0 - t) * b.matrix());
}

// --- suites ---------------------------------------------------------------

void suite_tables(Recorder& rec, const VerifyConfig& vc) {
  std::map<std::string, DiscoveryResult> cones;
  for (bool finite : {false, true})
    for (const char* d : {"00", "10", "01", "11"}) {
      const auto sel = ConeSelector::parse(d, finite);
      cones.emplace(sel.label(), alpha_cone(sel));
      rec.holds(sel.label() + " generators satisfy both certificates", verify_discovery(cones.at(sel.label())));
    }
  for (bool finite : {false, true})
    for (const char* d : {"00", "10"}) {
      const auto sel = ConeSelector::parse(d, finite);
      const auto& r = cones.at(sel.label());
      const auto cmp = compare_rows(r.table_rows(), reference_rows(sel));
      rec.le(sel.label() + " rows missing from reference table",
             static_cast<double>(cmp.missing.size() + cmp.unexpected.size()), 0.0);
      rec.holds(sel.label() + " row count " + std::to_string(r.table_rows().size()),
                r.table_rows().size() == reference_rows(sel).size());
    }
  for (bool finite : {false, true}) {
    const std::string prefix = finite ? "C∩" : "";
    for (auto [direct, image] : {std::pair{"01", "10"}, std::pair{"11", "00"}}) {
      std::vector<IntVector> dual;
      for (const auto& r : cones.at(prefix + image).table_rows()) dual.push_back(dual_alpha(r));
      const auto cmp = compare_rows(cones.at(prefix + direct).table_rows(), dual);
      rec.holds(prefix + direct + " equals dual image of " + prefix + image, cmp.match);
    }
  }
  // No discovered ray is contradicted by actual quantum states.
  Rng rng(vc.seed);
  const std::vector<Subsystem> four = {{"P1", 2}, {"P2", 2}, {"P3", 2}, {"P4", 2}};
  double worst = 0.0;
  std::vector<std::vector<EntropyFunctional>> images;
  for (const auto& [label, r] : cones) {
    if (!r.cone.finite) continue;
    for (const auto& row : r.rays) {
      RationalAlpha a;
      for (std::size_t i = 0; i < kAlphaSlots; ++i) a[i] = mpq_class(row[i]);
      const MonotonicityKind ka = r.cone.one_on_a ? MonotonicityKind::OneA : MonotonicityKind::ZeroA;
      const MonotonicityKind kb = r.cone.one_on_b ? MonotonicityKind::OneB : MonotonicityKind::ZeroB;
      images.push_back({MonotonicityMap(ka).apply(a), MonotonicityMap(kb).apply(a)});
    }
  }
  for (int t = 0; t < 300; ++t) {
    const auto rho = random::random_state(four, rng());
    const auto s = subset_entropies(rho);
    for (const auto& pair : images)
      for (const auto& f : pair) worst = std::min(worst, f.evaluate(s));
  }
  rec.ge("certificates on 300 random 4-qubit states (min value)", worst, -1e-9);
}

void suite_bounds(Recorder& rec, const VerifyConfig& vc) {
  std::vector<std::pair<std::string, DensityMatrix>> states = {
      {"bell", bell_state()},
      {"classical:0.5,0.5", classical_state({0.5, 0.5})},
      {"antisym:2", antisymmetric_state(2)},
  };
  for (int i = 0; i < 2; ++i) {
    const auto s = vc.seed * 100 + static_cast<std::uint64_t>(i);
    states.emplace_back("mixed-random:2,2," + std::to_string(s), mixed_random_state(2, 2, s));
    states.emplace_back("pure-random:2," + std::to_string(s), pure_random_state(2, s));
  }
  std::uint64_t salt = 0;
  for (const auto& [name, rho] : states) {
    const double cap = std::min(entropy_of(rho, "A"), entropy_of(rho, "B"));
    for (const char* m : {"P", "Q", "R"}) {
      const auto est = estimate_measure(named_alpha(m), rho, estimator(vc, 4, ++salt));
      rec.ge(std::string(m) + " " + name + " value >= lower bound", est.value, *est.lower_bound - 1e-9);
      rec.le(std::string(m) + " " + name + " value <= min(S_A,S_B)", est.value, cap + 1e-3);
    }
  }
  // Products of mixed qubits: the certified bound 0 is attained.
  for (int i = 0; i < 3; ++i) {
    const auto seed = vc.seed * 100 + 50 + static_cast<std::uint64_t>(i);
    const DensityMatrix rho = local_random_state(2, 2, seed);
    const Purification p = purify(rho);
    EstimatorConfig cfg = estimator(vc, 2, ++salt);
    cfg.d_f = 2;
    cfg.restarts = 2;
    cfg.warm_starts.push_back(ansatz_from_pure_extension(p, product_purification_witness(rho), 2, 2));
    for (const char* m : {"P", "Q", "R"}) {
      const auto est = estimate_measure(named_alpha(m), rho, cfg);
      const std::string name = std::string(m) + " local-random:2,2," + std::to_string(seed);
      rec.le(name + " value", est.value, 5e-3);
      rec.near(name + " lower bound", *est.lower_bound, 0.0, 1e-9);
    }
  }
  // Infinite measures: f on rho (x) I_k/k keeps decreasing and the estimator refuses.
  Alpha minus_v{};
  minus_v[2] = -1.0;
  const DensityMatrix rho = mixed_random_state(2, 2, vc.seed);
  double previous = 0.0;
  for (int k : {2, 4, 8}) {
    const DensityMatrix ext = tensor(rho, DensityMatrix({{"V", k}}, Matrix::Identity(k, k) / k));
    const double f = f_alpha(minus_v, ext);
    if (k > 2) rec.le("-e_V on rho (x) I_" + std::to_string(k) + "/" + std::to_string(k) + " decreases", f, previous - 1e-9);
    previous = f;
  }
  bool rejected = false;
  try {
    estimate_measure(minus_v, rho, estimator(vc, 2, 0));
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::InfiniteMeasure;
  }
  rec.holds("estimator rejects -e_V as infinite", rejected);
}

void suite_closed_forms(Recorder& rec, const VerifyConfig& vc) {
  std::uint64_t salt = 100;
  auto run = [&](const char* m, const DensityMatrix& rho, int d_v, int restarts = 8) {
    EstimatorConfig c = estimator(vc, d_v, ++salt);
    c.restarts = restarts;
    return estimate_measure(named_alpha(m), rho, c);
  };
  const DensityMatrix bell = bell_state();
  for (const char* m : {"P", "Q", "R"}) {
    const auto est = run(m, bell, 4);
    rec.within(std::string(m) + " bell", est.value, 1.0, 1.001);
    rec.near(std::string(m) + " bell lower bound", *est.lower_bound, 1.0, 1e-9);
  }
  const DensityMatrix c2 = classical_state({0.5, 0.5});
  rec.within("R classical:0.5,0.5", run("R", c2, 2).value, 0.5, 0.505);
  rec.within("P classical:0.5,0.5", run("P", c2, 4).value, 1.0, 1.005);
  rec.within("Q classical:0.5,0.5", run("Q", c2, 4).value, 1.0, 1.005);
  const DensityMatrix c4 = classical_state({0.25, 0.25, 0.25, 0.25});
  rec.within("Q classical:0.25x4", run("Q", c4, 4).value,
             closed_form(Measure::Q, {StateFamily::Kind::Classical, 0, {0.25, 0.25, 0.25, 0.25}, 2}), 2.01);

  for (int i = 0; i < 10; ++i) {
    const auto seed = vc.seed * 100 + static_cast<std::uint64_t>(i);
    const DensityMatrix rho = pure_random_state(2, seed);
    const double s_a = entropy_of(rho, "A");
    for (const char* m : {"P", "Q", "R"})
      rec.near(std::string(m) + " pure-random:2," + std::to_string(seed) + " vs S_A", run(m, rho, 4, 4).value,
               closed_form(parse_measure(m), {StateFamily::Kind::Pure, s_a, {}, 2}), 5e-3);
  }

  const DensityMatrix a3 = antisymmetric_state(3);
  const StateFamily anti{StateFamily::Kind::Antisymmetric, 0, {}, 3};
  rec.near("Q antisym:3 vs log2(3)", run("Q", a3, 3, 4).value, closed_form(Measure::Q, anti), 5e-3);
  const double sq = run("sq", a3, 3, 4).value;
  const double r = run("R", a3, 3, 4).value;
  rec.near("R antisym:3 vs S_AB/2 + inf I(A:B|V)/2", r, closed_form(Measure::R, anti, sq), 1e-2);

  Rng rng(vc.seed);
  double worst = 0.0;
  for (int d : {2, 3}) {
    const DensityMatrix rho = antisymmetric_state(d);
    for (int t = 0; t < 50; ++t) {
      const int d_v = 1 + static_cast<int>(rng() % 4);
      const int d_f = 1 + static_cast<int>(rng() % 4);
      const int d_e = d * (d - 1) / 2;
      if (d_v * d_f < d_e) continue;
      const auto ext = random_extension(rho, d_v, d_f, rng);
      const auto rep = entropy_report(ext);
      worst = std::max(worst, std::abs(rep.s[4] - rep.s[5]));
    }
  }
  rec.le("|S_AV - S_BV| on random antisymmetric extensions", worst, 1e-9);
}

void suite_additivity(Recorder& rec, const VerifyConfig& vc) {
  std::uint64_t salt = 200;
  auto factor = [&](const char* m, const DensityMatrix& rho) {
    EstimatorConfig c = estimator(vc, 2, ++salt);
    c.restarts = 4;
    return estimate_measure(named_alpha(m), rho, c);
  };
  auto product_estimate = [&](const char* m, const DensityMatrix& r1, const DensityMatrix& r2) {
    const auto e1 = factor(m, r1);
    const auto e2 = factor(m, r2);
    const DensityMatrix prod = bipartite_product(r1, r2);
    const Purification pp = purify(prod);
    EstimatorConfig c = estimator(vc, e1.d_v * e2.d_v, ++salt);
    c.d_f = e1.witness.d_f * e2.witness.d_f;
    c.restarts = 2;
    c.warm_starts.push_back(product_ansatz(purify(r1), e1.witness, purify(r2), e2.witness, pp));
    return estimate_measure(named_alpha(m), pp, c).value;
  };
  const DensityMatrix c2 = classical_state({0.5, 0.5});
  rec.within("R classical(1/2,1/2) x classical(1/2,1/2)", product_estimate("R", c2, c2), 1.0, 1.01);
  for (int i = 0; i < 2; ++i) {
    const auto s = vc.seed * 100 + 2 * static_cast<std::uint64_t>(i);
    const DensityMatrix p1 = pure_random_state(2, s), p2 = pure_random_state(2, s + 1);
    const double target = entropy_of(p1, "A") + entropy_of(p2, "A");
    const std::string name = "pure-random:2," + std::to_string(s) + " x pure-random:2," + std::to_string(s + 1);
    rec.near("Q " + name + " vs S_A1 + S_A2", product_estimate("Q", p1, p2), target, 1e-2);
    rec.near("R " + name + " vs S_A1 + S_A2", product_estimate("R", p1, p2), target, 1e-2);
  }
  const DensityMatrix p = pure_random_state(2, vc.seed * 100 + 9);
  rec.near("Q classical(1/2,1/2) x pure-random", product_estimate("Q", c2, p), 1.0 + entropy_of(p, "A"), 1e-2);
}

void suite_monotonicity(Recorder& rec, const VerifyConfig& vc, int trials) {
  std::uint64_t salt = 300;
  for (int t = 0; t < trials; ++t) {
    const auto seed = vc.seed * 1000 + static_cast<std::uint64_t>(t);
    // A (x) (B1 B2) with B2 discarded.
    const DensityMatrix full = random::random_state({{"A", 2}, {"B1", 2}, {"B2", 2}}, seed);
    const DensityMatrix before = group(full, {{"A", {"A"}}, {"B", {"B1", "B2"}}});
    const DensityMatrix after = relabel(partial_trace(full, {"A", "B1"}), {"A", "B"});
    for (const char* m : {"Q", "R"}) {
      EstimatorConfig c = estimator(vc, 4, ++salt);
      c.restarts = 2;
      c.max_iters = 1000;
      const Purification pb = purify(before);
      const auto eb = estimate_measure(named_alpha(m), pb, c);
      // The unprocessed witness, with B2 moved into the environment, extends the processed state.
      const Purification pa = purify(after);
      const Matrix phi = pb.psi * eb.witness.w.transpose();
      const int d_f = eb.witness.d_f, d_v = eb.witness.d_v;
      Matrix phi2 = Matrix::Zero(pa.psi.rows(), d_v * 2 * d_f);
      for (int a = 0; a < 2; ++a)
        for (int b1 = 0; b1 < 2; ++b1)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int v = 0; v < d_v; ++v)
              for (int f = 0; f < d_f; ++f)
                phi2(a * 2 + b1, v * 2 * d_f + b2 * d_f + f) = phi(a * 4 + b1 * 2 + b2, v * d_f + f);
      EstimatorConfig ca = estimator(vc, d_v, ++salt);
      ca.d_f = 2 * d_f;
      ca.restarts = 2;
      ca.max_iters = 1000;
      ca.warm_starts.push_back(ansatz_from_pure_extension(pa, phi2, d_v, 2 * d_f));
      const auto ea = estimate_measure(named_alpha(m), pa, ca);
      rec.le(std::string(m) + " trial " + std::to_string(t) + " processed <= unprocessed", ea.value, eb.value + 1e-2);
    }
  }
}

void suite_domination(Recorder& rec, const VerifyConfig& vc) {
  Rng rng(vc.seed);
  double worst_q = -1e300, worst_r = -1e300;
  const Alpha p = named_alpha("P"), q = named_alpha("Q"), r = named_alpha("R");
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho = mixed_random_state(2, 2, rng());
    const int d_v = 1 + static_cast<int>(rng() % 4);
    const int d_f = (4 + d_v - 1) / d_v + static_cast<int>(rng() % 3);
    const auto rep = entropy_report(random_extension(rho, d_v, d_f, rng));
    worst_q = std::max(worst_q, f_alpha(q, rep) - f_alpha(p, rep));
    worst_r = std::max(worst_r, f_alpha(r, rep) - f_alpha(p, rep));
  }
  rec.le("max f^Q - f^P over 100 random extensions", worst_q, 1e-9);
  rec.le("max f^R - f^P over 100 random extensions", worst_r, 1e-9);
}

void suite_duality(Recorder& rec, const VerifyConfig& vc) {
  std::uint64_t salt = 400;
  for (int i = 0; i < 3; ++i) {
    const auto seed = vc.seed * 100 + static_cast<std::uint64_t>(i);
    const DensityMatrix rho = mix(pure_random_state(2, seed), mixed_random_state(2, 2, seed + 17), 0.6);
    for (const char* m : {"P", "Q", "R"}) {
      const Alpha a = named_alpha(m);
      const double ea = estimate_measure(a, rho, estimator(vc, 4, ++salt)).value;
      const double eb = estimate_measure(dual_alpha(a), rho, estimator(vc, 4, ++salt)).value;
      rec.near(std::string(m) + " vs dual on state " + std::to_string(seed), ea, eb, 2e-3);
    }
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"tables",       "bounds",     "additivity", "monotonicity",
                                                 "domination",   "duality",    "closed-forms"};
  return names;
}

VerifyReport run_suite(const std::string& suite, const VerifyConfig& config) {
  if (suite == "all") {
    VerifyReport all;
    for (const auto& s : suite_names()) {
      auto r = run_suite(s, config);
      all.assertions.insert(all.assertions.end(), r.assertions.begin(), r.assertions.end());
    }
    return all;
  }
  VerifyReport report;
  Recorder rec(suite, report.assertions);
  if (suite == "tables") suite_tables(rec, config);
  else if (suite == "bounds") suite_bounds(rec, config);
  else if (suite == "additivity") suite_additivity(rec, config);
  else if (suite == "monotonicity") suite_monotonicity(rec, config, 20);
  else if (suite == "domination") suite_domination(rec, config);
  else if (suite == "duality") suite_duality(rec, config);
  else if (suite == "closed-forms") suite_closed_forms(rec, config);
  else fail(ErrorCode::UnknownName, "unknown suite '" + suite + "'");
  return report;
}

bool VerifyReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& a : assertions) {
    if (!a.pass) ++failed;
    out << (a.pass ? "PASS " : "FAIL ") << a.suite << ": " << a.name << "  measured=" << fmt("%.9g", a.measured)
        << " " << a.relation << " " << fmt("%.9g", a.bound) << "  slack=" << fmt("%.3g", a.slack) << "\n";
  }
  out << (failed == 0 ? "OK" : "FAILED") << " " << assertions.size() - failed << "/" << assertions.size()
      << " assertions passed\n";
  return out.str();
}

Json VerifyReport::to_json(const Json& config) const {
  Json j;
  j["version"] = kVersion;
  j["config"] = config;
  j["passed"] = passed();
  Json rows = Json::array();
  for (const auto& a : assertions) {
    Json r;
    r["suite"] = a.suite;
    r["name"] = a.name;
    r["measured"] = a.measured;
    r["relation"] = a.relation;
    r["bound"] = a.bound;
    r["slack"] = a.slack;
    r["pass"] = a.pass;
    rows.push_back(r);
  }
  j["assertions"] = rows;
  return j;
}

}  // namespace optcorr
