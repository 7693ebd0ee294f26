#pragma once

// Monotone cones in alpha-space.
//
// For each way of certifying monotonicity under local processing (discard the
// processed-away part: "0", or regroup it into V: "1", on A or on B) the
// certificate is a linear map alpha -> 4-party entropy functional that has to
// be nonnegative on every state. Replacing "every state" by the SSA + WM cone
// turns the set of admissible alpha into a rational polyhedral cone.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core/cone_engine.hpp"
#include "core/entropy_space.hpp"

namespace optcorr {

enum class MonotonicityKind { ZeroA, OneA, ZeroB, OneB };

std::string kind_name(MonotonicityKind kind);
/// (A1, A2, B, V) for the A-kinds, (A, B1, B2, V) for the B-kinds.
PartySet kind_parties(MonotonicityKind kind);

/// Every SSA instance I(X:Y|Z) >= 0 and every WM instance S(C|X) + S(C|Y) >= 0
/// over disjoint subsets, deduplicated after canonicalization.
std::vector<EntropyFunctional> ssa_wm_instances(const PartySet& parties);
RationalCone entropy_cone(const PartySet& parties);
/// The 4-party SSA + WM cone with generators computed; built once per process.
const RationalCone& four_party_entropy_cone();

/// The map alpha -> f^alpha(before) - f^alpha(after) for one certificate kind.
class MonotonicityMap {
 public:
  explicit MonotonicityMap(MonotonicityKind kind);

  MonotonicityKind kind() const { return kind_; }
  const PartySet& parties() const { return parties_; }
  EntropyFunctional apply(const RationalAlpha& alpha) const;
  // Image of the unit vector in slot j.
  const EntropyFunctional& column(std::size_t j) const { return columns_[j]; }

 private:
  MonotonicityKind kind_;
  PartySet parties_;
  std::vector<EntropyFunctional> columns_;
};

MonotonicityMap monotonicity_map(MonotonicityKind kind);

/// Normal of the finiteness halfspace: alpha_V + alpha_AV + alpha_BV + alpha_ABV >= 0.
IntVector finiteness_normal();
bool finiteness_check(const Alpha& alpha);
bool finiteness_check(const RationalAlpha& alpha);

/// Coordinate permutation induced by the purification symmetry.
template <class T>
BasicAlpha<T> dual_alpha(const BasicAlpha<T>& a) {
  BasicAlpha<T> b = a;
  b[2] = a[6];  // V   <- ABV
  b[4] = a[5];  // AV  <- BV
  b[5] = a[4];  // BV  <- AV
  b[6] = a[2];  // ABV <- V
  return b;
}
IntVector dual_alpha(const IntVector& a);

Alpha named_alpha(const std::string& name);
RationalAlpha named_alpha_exact(const std::string& name);

struct ConeSelector {
  bool one_on_a = false;  // first digit
  bool one_on_b = false;  // second digit
  bool finite = false;

  std::string digits() const;
  /// "00", ..., or "C∩10" style when restricted to the finiteness halfspace.
  std::string label() const;
  static ConeSelector parse(const std::string& digits, bool finite);
};

enum class RayTag { Unclassified, ZeroCandidate, MutualInformationCandidate, NontrivialCandidate, Infinite };
std::string tag_name(RayTag tag);

struct DiscoveryResult {
  ConeSelector cone;
  std::vector<IntVector> rays;       // extreme rays of the pointed part
  std::vector<IntVector> lineality;  // lineality basis
  std::vector<RayTag> classifications;  // parallel to table_rows() when filled

  /// Rays plus both orientations of every lineality vector, sorted. This is
  /// the generating set a table lists for a non-pointed cone.
  std::vector<IntVector> table_rows() const;
};

/// H-representation of a monotone cone: one inequality per (kind, entropy ray).
RationalCone alpha_cone_inequalities(const ConeSelector& cone);
DiscoveryResult alpha_cone(const ConeSelector& cone);

/// Re-checks that every generator of the result satisfies both certificates on
/// the whole entropy cone and, when restricted, the finiteness halfspace.
bool verify_discovery(const DiscoveryResult& result);

/// Reference generating sets from the reference tables (00, 10 and their
/// finite restrictions); the 01 and 11 cones are obtained through dual_alpha.
std::vector<IntVector> reference_rows(const ConeSelector& cone);
/// Same rows in reference order, with the printed label (0 when the table has none).
std::vector<std::pair<IntVector, int>> reference_table(const ConeSelector& cone);

struct TableComparison {
  bool match = false;
  std::vector<IntVector> missing;     // expected, not found
  std::vector<IntVector> unexpected;  // found, not expected
};
TableComparison compare_rows(const std::vector<IntVector>& found, const std::vector<IntVector>& expected);

}  // namespace optcorr
