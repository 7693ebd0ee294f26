#pragma once

// Exact polyhedral cones {x : c.x >= 0 for every stored c} and their
// generator form, computed by the double description method.

#include <optional>
#include <span>
#include <vector>

#include "core/exact_linalg.hpp"

namespace optcorr {

/// Lineality basis plus the extreme rays of the pointed part. Rays live in the
/// orthogonal complement of the lineality space, so the representation is
/// unique once canonicalized; both lists are sorted lexicographically.
struct Generators {
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;

  bool operator==(const Generators&) const = default;
};

struct DoubleDescriptionOptions {
  // Upper bound on the intermediate ray count before giving up.
  std::size_t max_rays = 500000;
};

class RationalCone {
 public:
  explicit RationalCone(std::size_t ambient_dim);
  RationalCone(std::size_t ambient_dim, const std::vector<IntVector>& inequalities);

  /// The cone spanned by rays and +/- lineality vectors, converted to
  /// inequality form through the dual cone.
  static RationalCone from_generators(std::size_t ambient_dim, const std::vector<IntVector>& rays,
                                      const std::vector<IntVector>& lineality = {});

  std::size_t ambient_dim() const { return dim_; }
  // Canonical, deduplicated and sorted; zero rows are dropped.
  const std::vector<IntVector>& inequalities() const { return inequalities_; }

  void add_inequality(const IntVector& c);
  void add_inequality(std::span<const mpq_class> c);

  bool has_generators() const { return generators_.has_value(); }
  /// Computes and caches the generators.
  const Generators& generators(const DoubleDescriptionOptions& options = {});
  /// The cached generators, or a fresh computation when none are cached.
  Generators generators_or_compute(const DoubleDescriptionOptions& options = {}) const;

 private:
  std::size_t dim_;
  std::vector<IntVector> inequalities_;
  std::optional<Generators> generators_;
};

/// Extreme rays and lineality basis of the cone.
Generators extreme_rays(const RationalCone& cone, const DoubleDescriptionOptions& options = {});

/// Concatenation of both inequality lists; no generators are carried over.
RationalCone intersect(const RationalCone& a, const RationalCone& b);

/// Whether c.x >= 0 holds on the whole cone, decided on its generators.
bool valid_on_cone(const IntVector& c, const RationalCone& cone);
bool valid_on_cone(std::span<const mpq_class> c, const RationalCone& cone);
bool valid_on_generators(const IntVector& c, const Generators& gens);

/// Primitive integer vector on the same open ray as v (throws on v = 0).
IntVector canonicalize_ray(std::span<const mpq_class> v);
IntVector canonicalize_ray(const IntVector& v);

/// Primitive integer vector spanning the same line, first nonzero entry positive.
IntVector canonicalize_line(const IntVector& v);

bool lex_less(const IntVector& a, const IntVector& b);

}  // namespace optcorr
