#include "core/monotone_discovery.hpp"

#include <algorithm>
#include <set>

#include "core/errors.hpp"

namespace optcorr {

namespace {

struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const { return lex_less(a, b); }
};

IntVector neg(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

IntVector row(std::initializer_list<long> v) { return IntVector(v.begin(), v.end()); }

bool is_a_kind(MonotonicityKind k) { return k == MonotonicityKind::ZeroA || k == MonotonicityKind::OneA; }

}  // namespace

std::string kind_name(MonotonicityKind kind) {
  switch (kind) {
    case MonotonicityKind::ZeroA: return "0A";
    case MonotonicityKind::OneA: return "1A";
    case MonotonicityKind::ZeroB: return "0B";
    case MonotonicityKind::OneB: return "1B";
  }
  return "?";
}

PartySet kind_parties(MonotonicityKind kind) {
  return is_a_kind(kind) ? PartySet({"A1", "A2", "B", "V"}) : PartySet({"A", "B1", "B2", "V"});
}

std::vector<EntropyFunctional> ssa_wm_instances(const PartySet& parties) {
  const Subset full = parties.full();
  std::set<IntVector, LexLess> seen;
  std::vector<EntropyFunctional> out;
  auto keep = [&](EntropyFunctional f) {
    if (seen.insert(primitive(std::span<const mpq_class>(f.coeffs()))).second) out.push_back(std::move(f));
  };
  for (Subset x = 1; x <= full; ++x)
    for (Subset y = 1; y <= full; ++y) {
      if (x & y) continue;
      for (Subset z = 0; z <= full; ++z)
        if (!(z & (x | y))) keep(cmi_functional(parties, x, y, z));
    }
  for (Subset c = 1; c <= full; ++c)
    for (Subset x = 1; x <= full; ++x)
      for (Subset y = 1; y <= full; ++y)
        if (!(c & x) && !(c & y) && !(x & y)) keep(wm_functional(parties, c, x, y));
  return out;
}

RationalCone entropy_cone(const PartySet& parties) {
  RationalCone cone(parties.num_subsets());
  for (const auto& f : ssa_wm_instances(parties)) cone.add_inequality(std::span<const mpq_class>(f.coeffs()));
  return cone;
}

const RationalCone& four_party_entropy_cone() {
  static const RationalCone cone = [] {
    RationalCone c = entropy_cone(PartySet({"P1", "P2", "P3", "P4"}));
    c.generators();
    return c;
  }();
  return cone;
}

MonotonicityMap::MonotonicityMap(MonotonicityKind kind) : kind_(kind), parties_(kind_parties(kind)) {
  Grouping before, after;
  if (is_a_kind(kind)) {
    const Subset a1 = parties_.mask_of("A1"), a2 = parties_.mask_of("A2"), b = parties_.mask_of("B"),
                 v = parties_.mask_of("V");
    before = {a1 | a2, b, v};
    after = kind == MonotonicityKind::ZeroA ? Grouping{a1, b, v} : Grouping{a1, b, a2 | v};
  } else {
    const Subset a = parties_.mask_of("A"), b1 = parties_.mask_of("B1"), b2 = parties_.mask_of("B2"),
                 v = parties_.mask_of("V");
    before = {a, b1 | b2, v};
    after = kind == MonotonicityKind::ZeroB ? Grouping{a, b1, v} : Grouping{a, b1, b2 | v};
  }
  for (std::size_t j = 0; j < kAlphaSlots; ++j) {
    const auto e = RationalAlpha::unit(j);
    columns_.push_back(alpha_to_functional(e, parties_, before) - alpha_to_functional(e, parties_, after));
  }
}

EntropyFunctional MonotonicityMap::apply(const RationalAlpha& alpha) const {
  EntropyFunctional out(parties_);
  for (std::size_t j = 0; j < kAlphaSlots; ++j)
    if (sgn(alpha[j]) != 0) out += alpha[j] * columns_[j];
  return out;
}

MonotonicityMap monotonicity_map(MonotonicityKind kind) { return MonotonicityMap(kind); }

IntVector finiteness_normal() { return row({0, 0, 1, 0, 1, 1, 1}); }

bool finiteness_check(const Alpha& a) { return a[2] + a[4] + a[5] + a[6] >= 0.0; }

bool finiteness_check(const RationalAlpha& a) { return sgn(a[2] + a[4] + a[5] + a[6]) >= 0; }

IntVector dual_alpha(const IntVector& a) {
  if (a.size() != kAlphaSlots) fail(ErrorCode::DimensionMismatch, "alpha needs 7 entries");
  RationalAlpha r;
  for (std::size_t i = 0; i < kAlphaSlots; ++i) r[i] = a[i];
  const RationalAlpha d = dual_alpha(r);
  IntVector out(kAlphaSlots);
  for (std::size_t i = 0; i < kAlphaSlots; ++i) out[i] = d[i].get_num();
  return out;
}

RationalAlpha named_alpha_exact(const std::string& name) {
  const mpq_class h(1, 2);
  RationalAlpha a;
  if (name == "P") {
    a[4] = 1;
  } else if (name == "Q") {
    a[0] = h, a[1] = h, a[4] = h, a[5] = -h;
  } else if (name == "R") {
    a[2] = -h, a[3] = h, a[4] = 1, a[6] = -h;
  } else if (name == "sq") {
    a[2] = -1, a[4] = 1, a[5] = 1, a[6] = -1;
  } else {
    fail(ErrorCode::UnknownName, "unknown measure '" + name + "' (expected P, Q, R or sq)");
  }
  return a;
}

Alpha named_alpha(const std::string& name) { return to_double(named_alpha_exact(name)); }

std::string ConeSelector::digits() const { return std::string(one_on_a ? "1" : "0") + (one_on_b ? "1" : "0"); }

std::string ConeSelector::label() const { return finite ? "C∩" + digits() : digits(); }

ConeSelector ConeSelector::parse(const std::string& digits, bool finite) {
  if (digits.size() != 2 || (digits[0] != '0' && digits[0] != '1') || (digits[1] != '0' && digits[1] != '1'))
    fail(ErrorCode::InvalidArgument, "cone selector must be one of 00, 10, 01, 11");
  return {digits[0] == '1', digits[1] == '1', finite};
}

std::string tag_name(RayTag tag) {
  switch (tag) {
    case RayTag::Unclassified: return "";
    case RayTag::ZeroCandidate: return "zero-candidate";
    case RayTag::MutualInformationCandidate: return "mutual-information-candidate";
    case RayTag::NontrivialCandidate: return "nontrivial-candidate";
    case RayTag::Infinite: return "infinite";
  }
  return "";
}

std::vector<IntVector> DiscoveryResult::table_rows() const {
  std::vector<IntVector> out = rays;
  for (const auto& l : lineality) {
    out.push_back(l);
    out.push_back(neg(l));
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

RationalCone alpha_cone_inequalities(const ConeSelector& cone) {
  const RationalCone& k = four_party_entropy_cone();
  const Generators gens = k.generators_or_compute();
  const MonotonicityMap on_a(cone.one_on_a ? MonotonicityKind::OneA : MonotonicityKind::ZeroA);
  const MonotonicityMap on_b(cone.one_on_b ? MonotonicityKind::OneB : MonotonicityKind::ZeroB);

  RationalCone out(kAlphaSlots);
  for (const MonotonicityMap* m : {&on_a, &on_b}) {
    auto pull_back = [&](const IntVector& h) {
      IntVector g(kAlphaSlots);
      for (std::size_t j = 0; j < kAlphaSlots; ++j) {
        const mpq_class v = dot(std::span<const mpq_class>(m->column(j).coeffs()), h);
        if (v.get_den() != 1) fail(ErrorCode::Numerical, "non-integral pull-back of an integer ray");
        g[j] = v.get_num();
      }
      return g;
    };
    for (const auto& h : gens.rays) out.add_inequality(pull_back(h));
    for (const auto& l : gens.lineality) {
      out.add_inequality(pull_back(l));
      out.add_inequality(neg(pull_back(l)));
    }
  }
  if (cone.finite) out.add_inequality(finiteness_normal());
  return out;
}

DiscoveryResult alpha_cone(const ConeSelector& cone) {
  RationalCone h = alpha_cone_inequalities(cone);
  const Generators& g = h.generators();
  DiscoveryResult result{cone, g.rays, g.lineality, {}};
  if (!verify_discovery(result)) fail(ErrorCode::Numerical, "discovered generator failed re-verification");
  return result;
}

bool verify_discovery(const DiscoveryResult& result) {
  const RationalCone& k = four_party_entropy_cone();
  const MonotonicityMap on_a(result.cone.one_on_a ? MonotonicityKind::OneA : MonotonicityKind::ZeroA);
  const MonotonicityMap on_b(result.cone.one_on_b ? MonotonicityKind::OneB : MonotonicityKind::ZeroB);
  for (const auto& r : result.table_rows()) {
    RationalAlpha a;
    for (std::size_t i = 0; i < kAlphaSlots; ++i) a[i] = r[i];
    for (const MonotonicityMap* m : {&on_a, &on_b}) {
      const auto f = m->apply(a);
      if (!valid_on_cone(std::span<const mpq_class>(f.coeffs()), k)) return false;
    }
    if (result.cone.finite && sgn(dot(finiteness_normal(), r)) < 0) return false;
  }
  return true;
}

std::vector<std::pair<IntVector, int>> reference_table(const ConeSelector& cone) {
  // Rows as printed, column order (A, B, V, AB, AV, BV, ABV).
  static const std::vector<IntVector> cone00 = {
      row({1, 1, 0, -1, 0, 0, 0}), row({1, 0, 0, 0, -1, 0, 0}), row({0, 0, 0, 0, 1, 1, -1}),
      row({0, 0, 0, 1, 0, 0, -1}), row({0, 1, 0, 0, 0, -1, 0}), row({0, 0, 1, 0, 0, 0, 0}),
      row({0, 0, -1, 0, 0, 0, 0})};
  static const std::vector<IntVector> cone10 = {
      row({1, 1, 0, -1, 0, 0, 0}), row({0, 0, -1, 0, 0, 1, -1}), row({1, 0, -1, 0, 0, 0, 0}),
      row({0, 1, 0, 0, 0, 0, -1}), row({1, 1, 0, 0, 0, -1, 0}), row({0, 0, -1, 1, 0, 0, -1}),
      row({0, 0, 0, 0, 1, 0, 0}),  row({0, 0, 0, 0, -1, 0, 0})};
  static const std::vector<IntVector> finite00 = {
      row({0, 0, 1, 0, 0, 0, 0}),  row({1, 1, 0, -1, 0, 0, 0}), row({0, 0, -1, 0, 1, 1, -1}),
      row({0, 0, 1, 1, 0, 0, -1}), row({0, 1, 1, 0, 0, -1, 0}), row({1, 0, 1, 0, -1, 0, 0})};
  static const std::vector<IntVector> finite10 = {
      row({0, 0, 0, 0, 1, 0, 0}),   row({1, 1, 0, -1, 0, 0, 0}), row({0, 0, -1, 0, 1, 1, -1}),
      row({1, 1, 0, 0, 1, -1, 0}),  row({0, 0, -1, 1, 2, 0, -1}), row({0, 1, 0, 0, 1, 0, -1}),
      row({1, 0, -1, 0, 1, 0, 0})};

  // 0 <-> 1 on both sides under the purification symmetry.
  const bool dual = cone.one_on_b;
  const bool first = dual ? !cone.one_on_a : cone.one_on_a;
  const auto& base = cone.finite ? (first ? finite10 : finite00) : (first ? cone10 : cone00);
  const int label0 = cone.finite ? (first ? 7 : 1) : 0;
  std::vector<std::pair<IntVector, int>> out;
  for (std::size_t i = 0; i < base.size(); ++i)
    out.emplace_back(dual ? dual_alpha(base[i]) : base[i], label0 == 0 ? 0 : label0 + static_cast<int>(i));
  return out;
}

std::vector<IntVector> reference_rows(const ConeSelector& cone) {
  std::vector<IntVector> out;
  for (auto& [r, label] : reference_table(cone)) out.push_back(r);
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

TableComparison compare_rows(const std::vector<IntVector>& found, const std::vector<IntVector>& expected) {
  std::set<IntVector, LexLess> f, e;
  for (const auto& r : found) f.insert(canonicalize_ray(r));
  for (const auto& r : expected) e.insert(canonicalize_ray(r));
  TableComparison out;
  std::set_difference(e.begin(), e.end(), f.begin(), f.end(), std::back_inserter(out.missing), LexLess{});
  std::set_difference(f.begin(), f.end(), e.begin(), e.end(), std::back_inserter(out.unexpected), LexLess{});
  out.match = out.missing.empty() && out.unexpected.empty() && f.size() == found.size();
  return out;
}

}  // namespace optcorr
