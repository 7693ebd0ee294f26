#include "core/serialization.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace optcorr {

const char* const kVersion = "optcorr 1.0.0";

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* const kColumns[kAlphaSlots] = {"alpha_A", "alpha_B", "alpha_V", "alpha_AB",
                                           "alpha_AV", "alpha_BV", "alpha_ABV"};

Json big_int(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

std::string tag_or_empty(const DiscoveryResult& r, std::size_t i) {
  return i < r.classifications.size() ? tag_name(r.classifications[i]) : std::string();
}

}  // namespace

std::string state_to_json(const DensityMatrix& rho) {
  std::ostringstream out;
  out << "{\n  \"dims\": {";
  const auto& subs = rho.subsystems();
  for (std::size_t i = 0; i < subs.size(); ++i)
    out << (i ? ", " : "") << Json(subs[i].label).dump() << ": " << subs[i].dim;
  out << "},\n  \"matrix\": [\n";
  const Matrix& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "    [";
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out << (c ? ", " : "") << "[" << g17(m(r, c).real()) << ", " << g17(m(r, c).imag()) << "]";
    out << "]" << (r + 1 < m.rows() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

DensityMatrix state_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("state file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dims") || !j.contains("matrix"))
    fail(ErrorCode::Parse, "state file needs \"dims\" and \"matrix\"");
  if (!j["dims"].is_object()) fail(ErrorCode::Parse, "\"dims\" must be an object mapping label to dimension");
  std::vector<Subsystem> subs;
  long total = 1;
  for (const auto& [label, dim] : j["dims"].items()) {
    if (!dim.is_number_integer()) fail(ErrorCode::Parse, "dimension of '" + label + "' is not an integer");
    subs.push_back({label, dim.get<int>()});
    total *= std::max(1, dim.get<int>());
    if (total > (1L << 14)) fail(ErrorCode::InvalidArgument, "state dimension too large");
  }
  const auto& rows = j["matrix"];
  if (!rows.is_array()) fail(ErrorCode::Parse, "\"matrix\" must be an array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      fail(ErrorCode::DimensionMismatch, "matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& e = row[c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        fail(ErrorCode::Parse, "matrix entries must be [re, im] pairs");
      }
    }
  }
  return DensityMatrix(std::move(subs), std::move(m));
}

Json alpha_to_json(const Alpha& alpha) {
  Json j = Json::array();
  for (std::size_t i = 0; i < kAlphaSlots; ++i) j.push_back(alpha[i]);
  return j;
}

Json int_row_to_json(const IntVector& row) {
  Json j = Json::array();
  for (const auto& x : row) j.push_back(big_int(x));
  return j;
}

Json discovery_to_json(const DiscoveryResult& result, const Json& config) {
  Json j;
  j["version"] = kVersion;
  j["config"] = config;
  j["cone"] = result.cone.label();
  Json cols = Json::array();
  for (const char* c : kColumns) cols.push_back(c);
  j["columns"] = cols;
  Json rows = Json::array();
  const auto table = result.table_rows();
  for (std::size_t i = 0; i < table.size(); ++i) {
    Json r;
    r["cone"] = result.cone.label();
    r["alpha"] = int_row_to_json(table[i]);
    r["classification"] = tag_or_empty(result, i);
    rows.push_back(r);
  }
  j["rays"] = rows;
  j["extreme_ray_count"] = result.rays.size();
  Json lin = Json::array();
  for (const auto& l : result.lineality) lin.push_back(int_row_to_json(l));
  j["lineality"] = lin;
  return j;
}

std::string discovery_to_csv(const DiscoveryResult& result, const Json& config) {
  std::ostringstream out;
  out << "# " << kVersion << "\n# config: " << config.dump() << "\n";
  out << "cone";
  for (const char* c : kColumns) out << "," << c;
  out << ",classification\n";
  const auto table = result.table_rows();
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << result.cone.label();
    for (const auto& x : table[i]) out << "," << x.get_str();
    out << "," << tag_or_empty(result, i) << "\n";
  }
  return out.str();
}

std::string discovery_to_table(const DiscoveryResult& result) {
  const auto found = result.table_rows();
  std::vector<std::pair<IntVector, int>> rows;
  std::map<std::string, RayTag> tags;
  for (std::size_t i = 0; i < found.size() && i < result.classifications.size(); ++i)
    tags[int_row_to_json(found[i]).dump()] = result.classifications[i];
  const auto reference = reference_table(result.cone);
  std::vector<IntVector> ref_rows;
  for (const auto& [r, label] : reference) ref_rows.push_back(r);
  if (compare_rows(found, ref_rows).match) {
    rows = reference;
  } else {
    for (const auto& r : found) rows.emplace_back(r, 0);
  }
  const bool labelled = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.second != 0; });

  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-7s", "Cone");
  out << buf;
  for (const char* c : {"A", "B", "V", "AB", "AV", "BV", "ABV"}) {
    std::snprintf(buf, sizeof buf, " | %4s", c);
    out << buf;
  }
  if (labelled) out << " || label";
  if (!tags.empty()) out << " | classification";
  out << "\n" << std::string(labelled ? 70 : 60, '-') << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%-7s", i == 0 ? result.cone.label().c_str() : "");
    out << buf;
    // The label carries a multibyte character; pad by display width.
    if (i == 0 && result.cone.finite) out << "  ";
    for (const auto& x : rows[i].first) {
      std::snprintf(buf, sizeof buf, " | %4s", x.get_str().c_str());
      out << buf;
    }
    if (labelled) out << " || " << rows[i].second;
    if (!tags.empty()) {
      auto it = tags.find(int_row_to_json(rows[i].first).dump());
      out << " | " << (it == tags.end() ? "" : tag_name(it->second));
    }
    out << "\n";
  }
  return out.str();
}

Json estimate_to_json(const MeasureEstimate& est, const Json& config) {
  Json j;
  j["version"] = kVersion;
  j["config"] = config;
  j["alpha"] = alpha_to_json(est.alpha);
  j["value"] = est.value;
  j["lower_bound"] = est.lower_bound ? Json(*est.lower_bound) : Json(nullptr);
  j["gap"] = est.gap ? Json(*est.gap) : Json(nullptr);
  j["d_V"] = est.d_v;
  j["restarts"] = est.restarts;
  j["max_iters"] = est.max_iters;
  j["seed"] = est.seed;
  j["converged"] = est.converged;
  j["iterations"] = est.iterations;
  j["label"] = "upper bound at d_V = " + std::to_string(est.d_v);
  Json per = Json::array();
  for (const auto& r : est.per_restart) {
    Json x;
    x["start"] = r.start;
    x["value"] = r.value;
    x["iterations"] = r.iterations;
    x["converged"] = r.converged;
    per.push_back(x);
  }
  j["per_restart"] = per;
  Json w;
  w["d_E"] = est.witness.d_e;
  w["d_V"] = est.witness.d_v;
  w["d_F"] = est.witness.d_f;
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < est.witness.w.rows(); ++r) {
    Json rr = Json::array(), ii = Json::array();
    for (Eigen::Index c = 0; c < est.witness.w.cols(); ++c) {
      rr.push_back(est.witness.w(r, c).real());
      ii.push_back(est.witness.w(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  w["real"] = re;
  w["imag"] = im;
  j["witness"] = w;
  return j;
}

Json functional_to_json(const EntropyFunctional& f) {
  Json j = Json::array();
  for (const auto& [label, num, den] : f.terms()) {
    const mpz_class n(num), d(den);
    j.push_back(Json::array({label, big_int(n), big_int(d)}));
  }
  return j;
}

EntropyFunctional functional_from_json(const PartySet& parties, const Json& j) {
  if (!j.is_array()) fail(ErrorCode::Parse, "functional must be an array of [label, num, den] triples");
  std::vector<EntropyFunctional::Term> terms;
  auto str = [](const Json& x) {
    if (x.is_number_integer()) return std::to_string(x.get<long long>());
    if (x.is_string()) return x.get<std::string>();
    fail(ErrorCode::Parse, "coefficient must be an integer");
  };
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_string())
      fail(ErrorCode::Parse, "functional terms are [label, num, den] triples");
    terms.emplace_back(t[0].get<std::string>(), str(t[1]), str(t[2]));
  }
  return EntropyFunctional::from_terms(parties, terms);
}

}  // namespace optcorr
