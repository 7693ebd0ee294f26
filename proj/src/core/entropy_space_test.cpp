#include <doctest.h>

#include <algorithm>
#include <random>

#include "core/entropy_space.hpp"
#include "core/errors.hpp"

using namespace optcorr;

namespace {

ErrorCode code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("party set labels and masks round-trip") {
  const PartySet p({"A1", "A2", "B", "V"});
  CHECK(p.num_subsets() == 15);
  for (Subset s = 1; s <= p.full(); ++s) CHECK(p.parse_subset(p.label(s)) == s);
  CHECK(p.label(p.mask_of({"A1", "B"})) == "A1B");
  CHECK(p.parse_subset("BA2A1") == p.parse_subset("A1A2B"));
  CHECK(code_of([] { PartySet({"A", "A"}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { p.parse_subset("A3"); }) != ErrorCode{});
}

TEST_CASE("mutual information and conditional mutual information coefficients") {
  const PartySet p({"A", "B", "C"});
  const Subset a = 1, b = 2, c = 4;
  const auto i_ab = cmi_functional(p, a, b);
  CHECK(i_ab.coeff(a) == 1);
  CHECK(i_ab.coeff(b) == 1);
  CHECK(i_ab.coeff(a | b) == -1);
  CHECK(i_ab.coeff(c) == 0);

  const auto i_ab_c = cmi_functional(p, a, b, c);
  CHECK(i_ab_c.coeff(a | c) == 1);
  CHECK(i_ab_c.coeff(b | c) == 1);
  CHECK(i_ab_c.coeff(a | b | c) == -1);
  CHECK(i_ab_c.coeff(c) == -1);

  const auto wm = wm_functional(p, c, a, b);  // S(C|A) + S(C|B)
  CHECK(wm.coeff(a | c) == 1);
  CHECK(wm.coeff(b | c) == 1);
  CHECK(wm.coeff(a) == -1);
  CHECK(wm.coeff(b) == -1);

  CHECK(code_of([&] { cmi_functional(p, a, a | b); }) == ErrorCode::Overlap);
  CHECK(code_of([&] { cmi_functional(p, 0, b); }) == ErrorCode::EmptyArgument);
}

TEST_CASE("alpha to functional is linear") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> u(-5, 5);
  const PartySet p({"A1", "A2", "B", "V"});
  const Grouping g{p.mask_of({"A1", "A2"}), p.mask_of("B"), p.mask_of("V")};
  for (int t = 0; t < 50; ++t) {
    std::vector<long> x(7), y(7);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    RationalAlpha a = to_rational(x), b = to_rational(y), sum;
    for (std::size_t i = 0; i < kAlphaSlots; ++i) sum[i] = a[i] + mpq_class(3, 2) * b[i];
    CHECK(alpha_to_functional(sum, p, g) ==
          alpha_to_functional(a, p, g) + mpq_class(3, 2) * alpha_to_functional(b, p, g));
  }
}

TEST_CASE("alpha to functional maps slots onto grouped subsets") {
  const PartySet p({"A1", "A2", "B", "V"});
  const Grouping g{p.mask_of({"A1"}), p.mask_of("B"), p.mask_of({"A2", "V"})};
  const auto f = alpha_to_functional(RationalAlpha::unit(4), p, g);  // S_AV -> S_{A1 A2 V}
  CHECK(f.coeff(p.mask_of({"A1", "A2", "V"})) == 1);
  CHECK(f.terms().size() == 1);

  const Grouping overlap{p.mask_of("A1"), p.mask_of("A1"), p.mask_of("V")};
  CHECK(code_of([&] { alpha_to_functional(RationalAlpha::unit(0), p, overlap); }) == ErrorCode::Overlap);
  const Grouping empty_v{p.mask_of("A1"), p.mask_of("B"), 0};
  CHECK(code_of([&] { alpha_to_functional(RationalAlpha::unit(2), p, empty_v); }) == ErrorCode::EmptyArgument);
}

TEST_CASE("functional terms round-trip and evaluate") {
  const PartySet p({"A", "B", "V"});
  auto f = cmi_functional(p, 1, 2, 4);
  f *= mpq_class(1, 3);
  const auto back = EntropyFunctional::from_terms(p, f.terms());
  CHECK(back == f);
  // I(A:B|V) on h_J = |J| is zero.
  std::vector<double> h(7);
  for (Subset s = 1; s <= 7; ++s) h[s - 1] = __builtin_popcount(s);
  CHECK(f.evaluate(h) == doctest::Approx(0.0));
  const auto terms = f.terms();
  CHECK(std::any_of(terms.begin(), terms.end(), [](const auto& t) { return std::get<0>(t) == "AV"; }));
}
