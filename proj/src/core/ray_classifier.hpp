#pragma once

// Advisory triviality tags for discovered rays. A tag is a hint from a handful
// of sampled states, never a proof.

#include <vector>

#include "core/measure_estimator.hpp"
#include "core/monotone_discovery.hpp"

namespace optcorr {

struct ClassifierConfig {
  double eps = 1e-3;
  EstimatorConfig estimator = short_pass();

  static EstimatorConfig short_pass() {
    EstimatorConfig c;
    c.d_v = 4;
    c.restarts = 2;
    c.max_iters = 400;
    return c;
  }
};

/// Noisy entangled two-qubit states: pure and classical samples make several
/// nontrivial rays look like multiples of I(A:B).
std::vector<DensityMatrix> default_classifier_samples(std::uint64_t seed, int count = 3);

RayTag classify_ray(const Alpha& alpha, const std::vector<DensityMatrix>& samples, const ClassifierConfig& config = {});

/// Fills result.classifications, parallel to result.table_rows().
void classify(DiscoveryResult& result, const std::vector<DensityMatrix>& samples, const ClassifierConfig& config = {});

}  // namespace optcorr
