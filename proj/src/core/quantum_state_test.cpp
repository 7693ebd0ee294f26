#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/named_states.hpp"
#include "core/quantum_state.hpp"

using namespace optcorr;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

DensityMatrix ket0(const std::string& label) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1;
  return DensityMatrix({{label, 2}}, m);
}

std::string message_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("partial trace examples") {
  const auto a = partial_trace(bell_state(), {"A"});
  CHECK(max_abs(a.matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-15);

  const auto prod = local_random_state(2, 3, 4);
  const auto ra = partial_trace(prod, {"A"});
  const auto rb = partial_trace(prod, {"B"});
  CHECK(max_abs(tensor(ra, rb).matrix() - prod.matrix()) < 1e-12);

  // Copy state sum_i p_i |iii>, keep A and V.
  Matrix copy = Matrix::Zero(8, 8);
  copy(0, 0) = 0.3;
  copy(7, 7) = 0.7;
  const DensityMatrix abv({{"A", 2}, {"B", 2}, {"V", 2}}, copy);
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 0.3;
  expect(3, 3) = 0.7;
  CHECK(max_abs(partial_trace(abv, {"A", "V"}).matrix() - expect) < 1e-15);

  CHECK_THROWS_AS(partial_trace(abv, {}), Error);
  CHECK_THROWS_AS(partial_trace(abv, {"X"}), Error);
}

TEST_CASE("partial trace composes") {
  const auto rho = random::random_state({{"A", 2}, {"B", 3}, {"C", 2}}, 9);
  const auto twice = partial_trace(partial_trace(rho, {"A", "C"}), {"C"});
  const auto once = partial_trace(rho, {"C"});
  CHECK(max_abs(twice.matrix() - once.matrix()) < 1e-12);
}

TEST_CASE("von Neumann entropy examples") {
  CHECK(von_neumann_entropy(Matrix(Matrix::Identity(2, 2) / 2.0)) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(bell_state()) == doctest::Approx(0.0).epsilon(1e-12));
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 0.5;
  d(1, 1) = d(2, 2) = 0.25;
  CHECK(von_neumann_entropy(d) == doctest::Approx(1.5));
}

TEST_CASE("f_alpha examples") {
  const auto bell_v = tensor(bell_state(), ket0("V"));
  Alpha p{}, q{}, r{};
  p[4] = 1;
  q[0] = q[1] = q[4] = 0.5;
  q[5] = -0.5;
  r[2] = -0.5;
  r[3] = 0.5;
  r[4] = 1;
  r[6] = -0.5;
  CHECK(f_alpha(p, bell_v) == doctest::Approx(1.0));
  CHECK(f_alpha(q, bell_v) == doctest::Approx(1.0));
  Matrix copy = Matrix::Zero(8, 8);
  copy(0, 0) = copy(7, 7) = 0.5;
  CHECK(f_alpha(r, DensityMatrix({{"A", 2}, {"B", 2}, {"V", 2}}, copy)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(f_alpha(p, bell_state()), Error);
}

TEST_CASE("density matrix validation names the violated property") {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  m(0, 1) = 0.1;
  CHECK(message_of([&] { DensityMatrix({{"A", 2}}, m); }).find("Hermitian") != std::string::npos);
  CHECK(message_of([&] { DensityMatrix({{"A", 2}}, Matrix(Matrix::Identity(2, 2))); }).find("trace") !=
        std::string::npos);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK(message_of([&] { DensityMatrix({{"A", 2}}, neg); }).find("positive") != std::string::npos);
  CHECK_THROWS_AS(DensityMatrix({{"A", 3}}, Matrix(Matrix::Identity(2, 2) / 2.0)), Error);
}

TEST_CASE("pure states have complementary entropies") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = random::random_pure_state({{"A", 2}, {"B", 3}, {"C", 2}}, seed);
    const auto s = subset_entropies(rho);
    for (Subset j = 1; j < 7; ++j) CHECK(std::abs(s[j - 1] - s[(7 ^ j) - 1]) < 1e-9);
  }
}

TEST_CASE("SSA and WM hold on random three-party states") {
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const auto s = subset_entropies(random::random_state({{"A", 2}, {"B", 2}, {"C", 2}}, rng()));
    auto S = [&](Subset j) { return j == 0 ? 0.0 : s[j - 1]; };
    for (Subset x = 1; x < 8; ++x)
      for (Subset y = 1; y < 8; ++y)
        for (Subset z = 0; z < 8; ++z) {
          if ((x & y) || (x & z) || (y & z)) continue;
          CHECK(S(x | z) + S(y | z) - S(x | y | z) - S(z) >= -1e-9);
          if (z != 0) CHECK(S(z | x) + S(z | y) - S(x) - S(y) >= -1e-9);
        }
  }
}

TEST_CASE("random local channels") {
  const auto bell = bell_state();
  const double before = mutual_information(bell, "A", "B");
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ch = random_local_channel("B", 2, 2, 1 + static_cast<int>(seed % 3), seed);
    CHECK(mutual_information(ch.apply(bell), "A", "B") <= before + 1e-9);
  }
  const auto rho = mixed_random_state(2, 2, 3);
  const auto unitary = random_local_channel("A", 2, 2, 1, 7).apply(rho);
  CHECK(von_neumann_entropy(partial_trace(unitary, {"A"})) ==
        doctest::Approx(von_neumann_entropy(partial_trace(rho, {"A"}))).epsilon(1e-12));
  const auto gone = random_local_channel("A", 2, 1, 2, 7).apply(rho);
  CHECK(gone.dim_of("A") == 1);
  CHECK(max_abs(partial_trace(gone, {"B"}).matrix() - partial_trace(rho, {"B"}).matrix()) < 1e-12);
}

TEST_CASE("antisymmetric qutrit entropies") {
  // Independent construction: the three vectors (|ij> - |ji>)/sqrt2 for i < j.
  Matrix rho = Matrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Vector v = Vector::Zero(9);
      v(3 * i + j) = 1 / std::sqrt(2.0);
      v(3 * j + i) = -1 / std::sqrt(2.0);
      rho += v * v.adjoint() / 3.0;
    }
  Matrix rho_a = Matrix::Zero(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int a2 = 0; a2 < 3; ++a2)
      for (int b = 0; b < 3; ++b) rho_a(a, a2) += rho(3 * a + b, 3 * a2 + b);
  CHECK(max_abs(rho_a - Matrix::Identity(3, 3) / 3.0) < 1e-15);
  const auto named = antisymmetric_state(3);
  CHECK(max_abs(named.matrix() - rho) < 1e-15);
  CHECK(von_neumann_entropy(named) == doctest::Approx(std::log2(3.0)));
  CHECK(von_neumann_entropy(partial_trace(named, {"A"})) == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("swap invariance of classical extensions") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ext = classical_extension({0.2, 0.3, 0.5}, 2, seed);
    const auto rep = entropy_report(ext);
    CHECK(std::abs(rep.s[4] - rep.s[5]) < 1e-9);
    CHECK(max_abs(partial_trace(ext, {"A", "B"}).matrix() - classical_state({0.2, 0.3, 0.5}).matrix()) < 1e-12);
  }
}

TEST_CASE("permute, relabel and group") {
  const auto rho = random::random_state({{"X", 2}, {"Y", 3}}, 5);
  const auto swapped = permute(rho, {"Y", "X"});
  CHECK(swapped.labels() == std::vector<std::string>{"Y", "X"});
  CHECK(max_abs(permute(swapped, {"X", "Y"}).matrix() - rho.matrix()) < 1e-15);
  CHECK(von_neumann_entropy(partial_trace(swapped, {"Y"})) ==
        doctest::Approx(von_neumann_entropy(partial_trace(rho, {"Y"}))));
  const auto g = group(relabel(rho, {"A", "B"}), {{"AB", {"A", "B"}}});
  CHECK(g.dims() == std::vector<int>{6});
}
