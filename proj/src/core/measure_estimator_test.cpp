#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/measure_estimator.hpp"
#include "core/named_states.hpp"

using namespace optcorr;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

EstimatorConfig config(int d_v, int restarts = 8, std::uint64_t seed = 0) {
  EstimatorConfig c;
  c.d_v = d_v;
  c.restarts = restarts;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("purification examples") {
  const auto p = purify(classical_state({0.5, 0.5}));
  CHECK(p.d_e == 2);
  // (|00>|i> + |11>|j>)/sqrt2; which column holds which is a tie.
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(p.psi(0, i)) + std::abs(p.psi(3, i)) == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::abs(p.psi(1, i)) + std::abs(p.psi(2, i)) < 1e-12);
  }
  CHECK(max_abs(p.psi * p.psi.adjoint() - classical_state({0.5, 0.5}).matrix()) < 1e-12);
  CHECK(purify(bell_state()).d_e == 1);
  CHECK(purify(named_state("classical:0.25,0.25,0.25,0.25")).d_e == 4);
  const DensityMatrix mixed({{"A", 2}, {"B", 2}}, Matrix(Matrix::Identity(4, 4) / 4.0));
  CHECK(purify(mixed).d_e == 4);
  const auto q = purify(mixed_random_state(2, 2, 3));
  CHECK(max_abs(q.psi * q.psi.adjoint() - mixed_random_state(2, 2, 3).matrix()) < 1e-12);
}

TEST_CASE("extension examples") {
  const auto rho = mixed_random_state(2, 2, 1);
  const auto p = purify(rho);
  // Trivial: rho_AB (x) |0><0|_V.
  const auto triv = extension_from_ansatz(p, trivial_ansatz(p.d_e, 2, p.d_e));
  Matrix k0 = Matrix::Zero(2, 2);
  k0(0, 0) = 1;
  CHECK(max_abs(triv.matrix() - tensor(rho, DensityMatrix({{"V", 2}}, k0)).matrix()) < 1e-12);
  // d_F = 1 identity: pure relabelled purification.
  const auto pure = extension_from_ansatz(p, purification_ansatz(p.d_e, p.d_e, 1));
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-9));

  // (|00>|0> + |11>|1>)/sqrt2, fixed explicitly.
  Purification c{2, 2, 2, Matrix::Zero(4, 2), Eigen::VectorXd::Constant(2, 0.5)};
  c.psi(0, 0) = c.psi(3, 1) = std::sqrt(0.5);
  // Copying E into V alone leaves the extension pure (a GHZ state).
  const auto ghz = extension_from_ansatz(c, purification_ansatz(2, 2, 1));
  CHECK(std::abs(ghz.matrix()(0, 7)) == doctest::Approx(0.5));
  // With the copy also written into F, the extension is sum_i 1/2 |iii><iii|.
  ExtensionAnsatz copy{2, 2, 2, Matrix::Zero(4, 2)};
  copy.w(0, 0) = 1;  // |0>_V |0>_F
  copy.w(3, 1) = 1;  // |1>_V |1>_F
  Matrix expect = Matrix::Zero(8, 8);
  expect(0, 0) = expect(7, 7) = 0.5;
  CHECK(max_abs(extension_from_ansatz(c, copy).matrix() - expect) < 1e-12);

  CHECK_THROWS_AS(extension_from_ansatz(c, trivial_ansatz(3, 2, 3)), Error);
  ExtensionAnsatz bad = copy;
  bad.w(0, 0) = 2;
  CHECK_THROWS_AS(extension_from_ansatz(c, bad), Error);
}

TEST_CASE("estimates on the worked examples") {
  const auto bell = bell_state();
  const auto q = estimate_measure(named_alpha("Q"), bell, config(2, 8, 7));
  CHECK(std::abs(q.value - 1.0) <= 1e-3);
  CHECK(*q.lower_bound == doctest::Approx(1.0));

  const auto r = estimate_measure(named_alpha("R"), classical_state({0.5, 0.5}), config(2));
  CHECK(std::abs(r.value - 0.5) <= 1e-3);

  // P on a product state with the V-purifies-A witness.
  const auto prod = local_random_state(2, 2, 9);
  const auto pp = purify(prod);
  const auto witness = ansatz_from_pure_extension(pp, product_purification_witness(prod), 2, 2);
  CHECK(f_alpha(named_alpha("P"), extension_from_ansatz(pp, witness)) == doctest::Approx(0.0).epsilon(1e-9));
  EstimatorConfig c = config(2, 2);
  c.d_f = 2;
  c.warm_starts = {witness};
  CHECK(estimate_measure(named_alpha("P"), prod, c).value <= 1e-3);
}

TEST_CASE("lower bounds") {
  CHECK(*lower_bound(named_alpha("Q"), bell_state()) == doctest::Approx(1.0));
  CHECK(*lower_bound(named_alpha("R"), classical_state({0.5, 0.5})) == doctest::Approx(0.5));
  Alpha twice_p = named_alpha("P");
  twice_p[4] = 2;
  CHECK(*lower_bound(twice_p, bell_state()) == doctest::Approx(2.0));
  CHECK(*lower_bound(named_alpha("sq"), bell_state()) == 0.0);
  Alpha custom{};
  custom[0] = 1;
  custom[2] = 1;
  CHECK_FALSE(lower_bound(custom, bell_state()).has_value());
}

TEST_CASE("closed forms") {
  CHECK(closed_form(Measure::Q, {StateFamily::Kind::Classical, 0, {0.25, 0.25, 0.25, 0.25}, 2}) ==
        doctest::Approx(2.0));
  CHECK(closed_form(Measure::R, {StateFamily::Kind::Classical, 0, {0.5, 0.5}, 2}) == doctest::Approx(0.5));
  CHECK(closed_form(Measure::Q, {StateFamily::Kind::Antisymmetric, 0, {}, 3}) == doctest::Approx(std::log2(3.0)));
  CHECK(closed_form(Measure::P, {StateFamily::Kind::Pure, 0.7, {}, 2}) == 0.7);
  CHECK(closed_form(Measure::R, {StateFamily::Kind::Antisymmetric, 0, {}, 3}, 1.0) ==
        doctest::Approx(0.5 * std::log2(3.0) + 0.5));
  CHECK_THROWS_AS(closed_form(Measure::Sq, {StateFamily::Kind::Pure, 1, {}, 2}), Error);
  CHECK_THROWS_AS(closed_form(Measure::R, {StateFamily::Kind::Antisymmetric, 0, {}, 3}), Error);
}

TEST_CASE("analytic gradient matches central differences") {
  const auto p = purify(mixed_random_state(2, 2, 4));
  Rng rng(12);
  for (const char* name : {"P", "Q", "R", "sq"}) {
    const ExtensionObjective obj(named_alpha(name), p, 3, 4);
    for (int t = 0; t < 3; ++t) {
      const Matrix w = random_ansatz(p.d_e, 3, 4, rng).w;
      Matrix g;
      obj.value_and_gradient(w, g);
      for (Eigen::Index i = 0; i < w.size(); ++i)
        for (Complex h : {Complex(1e-5, 0), Complex(0, 1e-5)}) {
          Matrix wp = w, wm = w;
          wp.data()[i] += h;
          wm.data()[i] -= h;
          const double fd = (obj.value(wp) - obj.value(wm)) / 2e-5;
          const double an = h.real() != 0 ? g.data()[i].real() : g.data()[i].imag();
          CHECK(std::abs(fd - an) <= 1e-4 * std::max(1.0, std::abs(an)));
        }
    }
  }
}

TEST_CASE("witness replays and restarts only help") {
  const auto rho = mixed_random_state(2, 2, 6);
  double previous = 1e300;
  for (int restarts = 0; restarts <= 4; ++restarts) {
    const auto est = estimate_measure(named_alpha("R"), rho, config(4, restarts, 3));
    CHECK(est.witness.isometry_defect() < 1e-10);
    CHECK(f_alpha(named_alpha("R"), extension_from_ansatz(rho, est.witness)) == doctest::Approx(est.value).epsilon(1e-9));
    CHECK(est.value <= previous + 1e-12);
    CHECK(est.value >= *est.lower_bound - 1e-9);
    previous = est.value;
  }
}

TEST_CASE("estimates are deterministic and independent of thread count") {
  const auto rho = mixed_random_state(2, 2, 8);
  EstimatorConfig c = config(3, 3, 5);
  const auto a = estimate_measure(named_alpha("Q"), rho, c);
  const auto b = estimate_measure(named_alpha("Q"), rho, c);
  c.threads = 3;
  const auto t = estimate_measure(named_alpha("Q"), rho, c);
  CHECK(a.value == b.value);
  CHECK(a.value == t.value);
  CHECK(a.witness.w == t.witness.w);
}

TEST_CASE("infinite measures are rejected") {
  Alpha minus_v{};
  minus_v[2] = -1;
  try {
    estimate_measure(minus_v, bell_state(), config(2));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfiniteMeasure);
  }
}

TEST_CASE("ansatz parameters round-trip") {
  Rng rng(1);
  const auto a = random_ansatz(2, 3, 2, rng);
  const auto b = ExtensionAnsatz::from_parameters(2, 3, 2, a.parameters());
  CHECK(a.w == b.w);
  CHECK_THROWS_AS(ExtensionAnsatz::from_parameters(2, 3, 2, {1.0}), Error);
}

TEST_CASE("product ansatz realizes the product extension") {
  const auto r1 = mixed_random_state(2, 2, 1), r2 = pure_random_state(2, 2);
  const auto p1 = purify(r1), p2 = purify(r2);
  Rng rng(4);
  const auto w1 = random_ansatz(p1.d_e, 2, 3, rng), w2 = random_ansatz(p2.d_e, 2, 2, rng);
  const auto prod = bipartite_product(r1, r2);
  const auto pp = purify(prod);
  const auto w = product_ansatz(p1, w1, p2, w2, pp);
  for (const char* name : {"P", "Q", "R"}) {
    const double sum = f_alpha(named_alpha(name), extension_from_ansatz(p1, w1)) +
                       f_alpha(named_alpha(name), extension_from_ansatz(p2, w2));
    CHECK(f_alpha(named_alpha(name), extension_from_ansatz(pp, w)) == doctest::Approx(sum).epsilon(1e-9));
  }
}
