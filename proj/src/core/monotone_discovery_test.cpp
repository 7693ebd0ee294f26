#include <doctest.h>

#include <random>

#include "core/conic_feasibility.hpp"
#include "core/errors.hpp"
#include "core/monotone_discovery.hpp"
#include "core/quantum_state.hpp"

using namespace optcorr;

namespace {

IntVector iv(std::initializer_list<long> v) { return IntVector(v.begin(), v.end()); }

RationalAlpha ra(std::initializer_list<long> v) { return to_rational(std::vector<long>(v)); }

RationalAlpha random_alpha(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> u(-4, 4);
  std::vector<long> v(7);
  for (auto& x : v) x = u(rng);
  return to_rational(v);
}

}  // namespace

TEST_CASE("SSA and WM enumeration") {
  const PartySet p({"P1", "P2", "P3", "P4"});
  const auto inst = ssa_wm_instances(p);
  CHECK(inst.size() == 85);
  bool has_mi = false;
  const auto target = cmi_functional(p, 1, 2);
  for (const auto& f : inst) has_mi |= f == target;
  CHECK(has_mi);
  // h_J = |J| is the entropy vector of four maximally mixed qubits.
  std::vector<double> h(15);
  for (Subset s = 1; s <= 15; ++s) h[s - 1] = __builtin_popcount(s);
  for (const auto& f : inst) CHECK(f.evaluate(h) >= 0.0);
}

TEST_CASE("four-party entropy cone has 59 extreme rays") {
  const auto g = four_party_entropy_cone().generators_or_compute();
  CHECK(g.rays.size() == 59);
  CHECK(g.lineality.empty());
}

TEST_CASE("monotonicity map examples") {
  const MonotonicityMap m0a(MonotonicityKind::ZeroA);
  const PartySet& p = m0a.parties();
  const Subset a1 = p.mask_of("A1"), a2 = p.mask_of("A2"), b = p.mask_of("B"), v = p.mask_of("V");
  CHECK(m0a.apply(ra({1, 1, 0, -1, 0, 0, 0})) == cmi_functional(p, a2, b, a1));

  const MonotonicityMap m1a(MonotonicityKind::OneA);
  CHECK(m1a.apply(RationalAlpha::unit(4)).is_zero());

  const auto f = m0a.apply(RationalAlpha::unit(4));
  CHECK(f == conditional_entropy(p, a2, a1 | v));
  CHECK_FALSE(valid_on_cone(std::span<const mpq_class>(f.coeffs()), four_party_entropy_cone()));
}

TEST_CASE("monotonicity maps match the displayed inequalities") {
  std::mt19937_64 rng(4);
  for (auto kind : {MonotonicityKind::ZeroA, MonotonicityKind::OneA}) {
    const MonotonicityMap m(kind);
    const PartySet& p = m.parties();
    const Subset a1 = p.mask_of("A1"), a2 = p.mask_of("A2"), b = p.mask_of("B"), v = p.mask_of("V");
    for (int t = 0; t < 20; ++t) {
      const RationalAlpha a = random_alpha(rng);
      EntropyFunctional expect(p);
      expect += a[0] * conditional_entropy(p, a2, a1);
      expect += a[3] * conditional_entropy(p, a2, a1 | b);
      if (kind == MonotonicityKind::ZeroA) {
        expect += a[4] * conditional_entropy(p, a2, a1 | v);
        expect += a[6] * conditional_entropy(p, a2, a1 | b | v);
      } else {
        expect -= a[5] * conditional_entropy(p, a2, b | v);
        expect -= a[2] * conditional_entropy(p, a2, v);
      }
      CHECK(m.apply(a) == expect);
    }
  }
  // B-kinds are the A-kinds with the roles of A and B exchanged.
  const MonotonicityMap m0b(MonotonicityKind::ZeroB);
  const PartySet& q = m0b.parties();
  CHECK(m0b.apply(RationalAlpha::unit(1)) == conditional_entropy(q, q.mask_of("B2"), q.mask_of("B1")));
}

TEST_CASE("finiteness and duality") {
  CHECK(finiteness_check(named_alpha("P")));
  Alpha minus_v{};
  minus_v[2] = -1;
  CHECK_FALSE(finiteness_check(minus_v));
  CHECK(finiteness_check(named_alpha("sq")));

  CHECK(dual_alpha(RationalAlpha::unit(4)) == RationalAlpha::unit(5));
  CHECK(dual_alpha(named_alpha_exact("sq")) == named_alpha_exact("sq"));
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_alpha(rng);
    CHECK(dual_alpha(dual_alpha(a)) == a);
  }
  CHECK_THROWS_AS(named_alpha("X"), Error);
}

TEST_CASE("named measures sit on reference rays") {
  const auto c10 = reference_rows(ConeSelector{true, false, true});
  auto scaled = [](const char* name) {
    IntVector out;
    const auto a = named_alpha_exact(name);
    for (std::size_t i = 0; i < kAlphaSlots; ++i) out.push_back(mpz_class(2 * a[i]));
    return out;
  };
  auto contains = [&](const IntVector& r) { return std::find(c10.begin(), c10.end(), r) != c10.end(); };
  CHECK(contains(scaled("Q")));
  CHECK(contains(scaled("R")));
  CHECK(contains(iv({0, 0, -1, 0, 1, 1, -1})));
  CHECK(contains(iv({0, 0, 0, 0, 1, 0, 0})));
}

TEST_CASE("monotone cones reproduce the reference tables") {
  for (bool finite : {false, true})
    for (const char* d : {"00", "10", "01", "11"}) {
      const auto sel = ConeSelector::parse(d, finite);
      const auto r = alpha_cone(sel);
      CAPTURE(sel.label());
      CHECK(compare_rows(r.table_rows(), reference_rows(sel)).match);
      CHECK(verify_discovery(r));
    }
  CHECK(alpha_cone({false, false, false}).table_rows().size() == 7);
  CHECK(alpha_cone({true, false, false}).table_rows().size() == 8);
  CHECK(alpha_cone({false, false, true}).table_rows().size() == 6);
  CHECK(alpha_cone({true, false, true}).table_rows().size() == 7);
}

TEST_CASE("directly computed 01 and 11 cones are dual images") {
  for (bool finite : {false, true})
    for (auto [direct, image] : {std::pair{"01", "10"}, std::pair{"11", "00"}}) {
      std::vector<IntVector> dual;
      for (const auto& r : alpha_cone(ConeSelector::parse(image, finite)).table_rows()) dual.push_back(dual_alpha(r));
      CHECK(compare_rows(alpha_cone(ConeSelector::parse(direct, finite)).table_rows(), dual).match);
    }
}

TEST_CASE("discovered rays are certified by the Farkas route") {
  const auto& cone = four_party_entropy_cone();
  for (const char* d : {"00", "10"}) {
    const auto sel = ConeSelector::parse(d, true);
    for (const auto& row : alpha_cone(sel).rays) {
      RationalAlpha a;
      for (std::size_t i = 0; i < kAlphaSlots; ++i) a[i] = mpq_class(row[i]);
      for (auto kind : {sel.one_on_a ? MonotonicityKind::OneA : MonotonicityKind::ZeroA,
                        sel.one_on_b ? MonotonicityKind::OneB : MonotonicityKind::ZeroB}) {
        const auto f = MonotonicityMap(kind).apply(a);
        CHECK(valid_by_farkas(primitive(std::span<const mpq_class>(f.coeffs())), cone));
      }
    }
  }
}

TEST_CASE("discovered rays are never contradicted by random states") {
  std::vector<EntropyFunctional> images;
  for (const char* d : {"00", "10", "01", "11"}) {
    const auto sel = ConeSelector::parse(d, true);
    for (const auto& row : alpha_cone(sel).rays) {
      RationalAlpha a;
      for (std::size_t i = 0; i < kAlphaSlots; ++i) a[i] = mpq_class(row[i]);
      images.push_back(MonotonicityMap(sel.one_on_a ? MonotonicityKind::OneA : MonotonicityKind::ZeroA).apply(a));
      images.push_back(MonotonicityMap(sel.one_on_b ? MonotonicityKind::OneB : MonotonicityKind::ZeroB).apply(a));
    }
  }
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const auto s = subset_entropies(random::random_state({{"1", 2}, {"2", 2}, {"3", 2}, {"4", 2}}, rng()));
    for (const auto& f : images) CHECK(f.evaluate(s) >= -1e-9);
  }
}

TEST_CASE("cone selector parsing") {
  CHECK(ConeSelector::parse("10", true).label() == "C∩10");
  CHECK(ConeSelector::parse("01", false).label() == "01");
  CHECK_THROWS_AS(ConeSelector::parse("20", false), Error);
}
