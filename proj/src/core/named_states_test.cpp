#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/named_states.hpp"

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

TEST_CASE("grammar") {
  CHECK(named_state("bell").total_dim() == 4);
  const auto c = named_state("classical:0.5,0.5");
  CHECK(c.matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(c.matrix()(3, 3).real() == doctest::Approx(0.5));
  CHECK(c.matrix()(1, 1).real() == 0.0);
  CHECK(named_state("antisym:3").dims() == std::vector<int>{3, 3});
  CHECK(named_state("mixed-random:2,3,1").dims() == std::vector<int>{2, 3});
  CHECK(named_state("symmetric-random:2,4").total_dim() == 4);
  const auto p = named_state("product:bell;classical:0.25,0.75");
  CHECK(p.labels() == std::vector<std::string>{"A", "B"});
  CHECK(p.dims() == std::vector<int>{4, 4});
  CHECK(mutual_information(p, "A", "B") == doctest::Approx(2.0 + 0.8112781244591328));
}

TEST_CASE("singlet and seeded determinism") {
  const auto s = antisymmetric_state(2);
  CHECK(von_neumann_entropy(s) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(partial_trace(s, {"A"})) == doctest::Approx(1.0));
  CHECK(named_state("pure-random:2,5").matrix() == named_state("pure-random:2,5").matrix());
  CHECK(named_state("pure-random:2,5").matrix() != named_state("pure-random:2,6").matrix());
}

TEST_CASE("symmetric states are swap invariant") {
  const auto s = symmetric_random_state(3, 2);
  CHECK(std::abs(von_neumann_entropy(partial_trace(s, {"A"})) - von_neumann_entropy(partial_trace(s, {"B"}))) < 1e-9);
}

TEST_CASE("grammar errors") {
  CHECK(code_of([] { named_state("classical:0.5,0.6"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { named_state("classical:x"); }) == ErrorCode::Parse);
  CHECK(code_of([] { named_state("antisym:1"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { named_state("ghz"); }) == ErrorCode::UnknownName);
  CHECK(code_of([] { named_state("pure-random:2"); }) == ErrorCode::Parse);
  CHECK(code_of([] { named_state("product:bell"); }) == ErrorCode::Parse);
}
