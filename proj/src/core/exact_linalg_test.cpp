#include <doctest.h>

#include "core/exact_linalg.hpp"

using namespace optcorr;

namespace {

IntVector iv(std::initializer_list<long> v) { return IntVector(v.begin(), v.end()); }

}  // namespace

TEST_CASE("primitive scaling") {
  const RationalVector q = {mpq_class(1, 2), mpq_class(-3, 4), 0};
  CHECK(primitive(std::span<const mpq_class>(q)) == iv({2, -3, 0}));
  CHECK(primitive(iv({4, -6, 8})) == iv({2, -3, 4}));
  CHECK(is_zero(iv({0, 0})));
}

TEST_CASE("nullspace vectors are orthogonal to every row") {
  const std::vector<IntVector> rows = {iv({1, 2, 3, 4}), iv({2, 4, 6, 8}), iv({0, 1, -1, 0})};
  const auto ns = nullspace(rows, 4);
  CHECK(ns.size() == 2);
  CHECK(rank(rows, 4) == 2);
  for (const auto& v : ns)
    for (const auto& r : rows) CHECK(dot(v, r) == 0);
  CHECK(rank(ns, 4) == 2);
  CHECK(nullspace({}, 3).size() == 3);
}
