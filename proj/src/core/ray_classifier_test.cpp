#include <doctest.h>

#include "core/ray_classifier.hpp"

using namespace optcorr;

namespace {

Alpha alpha(std::initializer_list<double> v) {
  Alpha a;
  std::copy(v.begin(), v.end(), a.c.begin());
  return a;
}

}  // namespace

TEST_CASE("reference trivial and nontrivial rays") {
  const auto samples = default_classifier_samples(0);
  CHECK(classify_ray(alpha({0, 0, 1, 0, 0, 0, 0}), samples) == RayTag::ZeroCandidate);       // ray 1
  CHECK(classify_ray(alpha({1, 1, 0, -1, 0, 0, 0}), samples) == RayTag::MutualInformationCandidate);  // ray 2
  CHECK(classify_ray(alpha({0, 0, 1, 1, 0, 0, -1}), samples) == RayTag::ZeroCandidate);      // ray 4
  CHECK(classify_ray(alpha({1, 0, -1, 0, 1, 0, 0}), samples) == RayTag::MutualInformationCandidate);  // ray 13
  CHECK(classify_ray(alpha({0, 0, 0, 0, 1, 0, 0}), samples) == RayTag::NontrivialCandidate);  // ray 7
  CHECK(classify_ray(alpha({1, 1, 0, 0, 1, -1, 0}), samples) == RayTag::NontrivialCandidate);  // ray 10
  CHECK(classify_ray(alpha({0, 0, -1, 1, 2, 0, -1}), samples) == RayTag::NontrivialCandidate);  // ray 11
  CHECK(classify_ray(alpha({0, 0, -1, 0, 0, 0, 0}), samples) == RayTag::Infinite);
}

TEST_CASE("classification fills every table row") {
  auto r = alpha_cone({false, false, true});
  classify(r, default_classifier_samples(1));
  CHECK(r.classifications.size() == r.table_rows().size());
}
