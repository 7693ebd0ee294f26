#include "core/ray_classifier.hpp"

#include <algorithm>
#include <cmath>

#include "core/named_states.hpp"

namespace optcorr {

std::vector<DensityMatrix> default_classifier_samples(std::uint64_t seed, int count) {
  std::vector<DensityMatrix> out;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed * 1000 + static_cast<std::uint64_t>(i);
    const DensityMatrix pure = pure_random_state(2, s);
    const DensityMatrix mixed = mixed_random_state(2, 2, s + 500);
    out.emplace_back(pure.subsystems(), 0.7 * pure.matrix() + 0.3 * mixed.matrix());
  }
  return out;
}

RayTag classify_ray(const Alpha& alpha, const std::vector<DensityMatrix>& samples, const ClassifierConfig& config) {
  if (!finiteness_check(alpha)) return RayTag::Infinite;
  bool all_zero = true;
  bool all_mi = true;
  for (const auto& rho : samples) {
    const Purification p = purify(rho);
    const int d_v = config.estimator.d_v == 0 ? p.d_a * p.d_b : config.estimator.d_v;
    // Trivial extension and the purification itself, then a short search.
    const DensityMatrix trivial = extension_from_ansatz(p, trivial_ansatz(p.d_e, d_v, d_v * p.d_e));
    double best = f_alpha(alpha, trivial);
    if (d_v >= p.d_e) best = std::min(best, f_alpha(alpha, extension_from_ansatz(p, purification_ansatz(p.d_e, d_v, 1))));
    best = std::min(best, estimate_measure(alpha, p, config.estimator).value);
    const double mi = mutual_information(rho, "A", "B");
    if (std::abs(best) > config.eps) all_zero = false;
    if (std::abs(best - mi) > config.eps) all_mi = false;
  }
  if (all_zero) return RayTag::ZeroCandidate;
  if (all_mi) return RayTag::MutualInformationCandidate;
  return RayTag::NontrivialCandidate;
}

void classify(DiscoveryResult& result, const std::vector<DensityMatrix>& samples, const ClassifierConfig& config) {
  result.classifications.clear();
  for (const auto& row : result.table_rows()) {
    Alpha a;
    for (std::size_t i = 0; i < kAlphaSlots; ++i) a[i] = row[i].get_d();
    result.classifications.push_back(classify_ray(a, samples, config));
  }
}

}  // namespace optcorr
