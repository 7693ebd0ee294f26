#include "core/cone_engine.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

#include "core/errors.hpp"

namespace optcorr {

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const mpz_class& x, const mpz_class& y) { return cmp(x, y) < 0; });
}

IntVector canonicalize_ray(const IntVector& v) {
  if (is_zero(v)) fail(ErrorCode::InvalidArgument, "cannot canonicalize the zero vector");
  return primitive(v);
}

IntVector canonicalize_ray(std::span<const mpq_class> v) {
  IntVector out = primitive(v);
  if (is_zero(out)) fail(ErrorCode::InvalidArgument, "cannot canonicalize the zero vector");
  return out;
}

IntVector canonicalize_line(const IntVector& v) {
  IntVector out = canonicalize_ray(v);
  auto first = std::find_if(out.begin(), out.end(), [](const mpz_class& x) { return sgn(x) != 0; });
  if (sgn(*first) < 0)
    for (auto& x : out) x = -x;
  return out;
}

namespace {

struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const { return lex_less(a, b); }
};

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool contains(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((o.words_[i] & ~words_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  IntVector v;
  Bits zeros;
};

// a * x + b * y, reduced to a primitive vector.
IntVector combine(const mpz_class& a, const IntVector& x, const mpz_class& b, const IntVector& y) {
  IntVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return primitive(std::move(out));
}

Generators double_description(const std::vector<IntVector>& ineqs, std::size_t dim,
                              const DoubleDescriptionOptions& options) {
  Generators out;
  if (ineqs.empty()) {
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim, 0);
      e[i] = 1;
      out.lineality.push_back(std::move(e));
    }
    return out;
  }

  for (const auto& l : nullspace(ineqs, dim)) out.lineality.push_back(canonicalize_line(l));
  std::sort(out.lineality.begin(), out.lineality.end(), LexLess{});

  // Start from the whole complement of the lineality space as a set of lines
  // and turn one line into a ray per inequality until none remain.
  std::vector<IntVector> lines =
      out.lineality.empty() ? nullspace({}, dim) : nullspace(out.lineality, dim);
  const std::size_t pointed_dim = lines.size();
  const std::size_t m = ineqs.size();
  std::vector<bool> processed(m, false);
  std::vector<IntVector> initial;

  while (!lines.empty()) {
    std::size_t pick = m;
    std::size_t k = 0;
    for (std::size_t i = 0; i < m && pick == m; ++i) {
      if (processed[i]) continue;
      for (std::size_t j = 0; j < lines.size(); ++j) {
        if (sgn(dot(ineqs[i], lines[j])) != 0) {
          pick = i;
          k = j;
          break;
        }
      }
    }
    if (pick == m) fail(ErrorCode::Numerical, "double description: lines left but no inequality separates them");
    const auto& c = ineqs[pick];
    IntVector lk = lines[k];
    mpz_class vk = dot(c, lk);
    if (sgn(vk) < 0) {
      for (auto& x : lk) x = -x;
      vk = -vk;
    }
    std::vector<IntVector> next_lines;
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (j == k) continue;
      next_lines.push_back(combine(vk, lines[j], -dot(c, lines[j]), lk));
    }
    for (auto& r : initial) r = combine(vk, r, -dot(c, r), lk);
    initial.push_back(primitive(lk));
    lines = std::move(next_lines);
    processed[pick] = true;
  }

  std::vector<Ray> rays;
  for (auto& v : initial) {
    Ray r{std::move(v), Bits(m)};
    for (std::size_t i = 0; i < m; ++i)
      if (processed[i] && sgn(dot(ineqs[i], r.v)) == 0) r.zeros.set(i);
    rays.push_back(std::move(r));
  }

  for (;;) {
    // Most-zeros-first insertion order, ties broken by fewer negatives, then index.
    std::size_t pick = m;
    std::size_t best_zeros = 0, best_neg = 0;
    std::vector<int> best_signs;
    for (std::size_t i = 0; i < m; ++i) {
      if (processed[i]) continue;
      std::vector<int> signs(rays.size());
      std::size_t zeros = 0, neg = 0;
      for (std::size_t j = 0; j < rays.size(); ++j) {
        signs[j] = sgn(dot(ineqs[i], rays[j].v));
        zeros += signs[j] == 0;
        neg += signs[j] < 0;
      }
      if (pick == m || zeros > best_zeros || (zeros == best_zeros && neg < best_neg)) {
        pick = i;
        best_zeros = zeros;
        best_neg = neg;
        best_signs = std::move(signs);
      }
    }
    if (pick == m) break;
    processed[pick] = true;
    const auto& c = ineqs[pick];

    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (best_signs[j] > 0) pos.push_back(j);
      if (best_signs[j] < 0) neg.push_back(j);
    }
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (best_signs[j] < 0) continue;
      Ray r = rays[j];
      if (best_signs[j] == 0) r.zeros.set(pick);
      next.push_back(std::move(r));
    }
    for (auto p : pos) {
      for (auto n : neg) {
        Bits common = rays[p].zeros & rays[n].zeros;
        if (pointed_dim >= 2 && common.count() + 2 < pointed_dim) continue;
        bool adjacent = true;
        for (std::size_t j = 0; j < rays.size() && adjacent; ++j)
          if (j != p && j != n && rays[j].zeros.contains(common)) adjacent = false;
        if (!adjacent) continue;
        const mpz_class vp = dot(c, rays[p].v);
        const mpz_class vn = dot(c, rays[n].v);
        Ray r{combine(vp, rays[n].v, -vn, rays[p].v), common};
        r.zeros.set(pick);
        next.push_back(std::move(r));
      }
    }
    if (next.size() > options.max_rays)
      fail(ErrorCode::IterationLimit, "double description exceeded the intermediate ray limit of " +
                                          std::to_string(options.max_rays));
    rays = std::move(next);
  }

  std::set<IntVector, LexLess> unique;
  for (auto& r : rays) unique.insert(std::move(r.v));
  out.rays.assign(unique.begin(), unique.end());
  return out;
}

}  // namespace

RationalCone::RationalCone(std::size_t ambient_dim) : dim_(ambient_dim) {
  if (dim_ == 0) fail(ErrorCode::InvalidArgument, "ambient dimension must be positive");
}

RationalCone::RationalCone(std::size_t ambient_dim, const std::vector<IntVector>& inequalities)
    : RationalCone(ambient_dim) {
  for (const auto& c : inequalities) add_inequality(c);
}

RationalCone RationalCone::from_generators(std::size_t ambient_dim, const std::vector<IntVector>& rays,
                                           const std::vector<IntVector>& lineality) {
  RationalCone dual(ambient_dim);
  for (const auto& r : rays) dual.add_inequality(r);
  for (const auto& l : lineality) {
    dual.add_inequality(l);
    IntVector neg = l;
    for (auto& x : neg) x = -x;
    dual.add_inequality(neg);
  }
  const Generators facets = extreme_rays(dual);
  RationalCone cone(ambient_dim);
  for (const auto& f : facets.rays) cone.add_inequality(f);
  for (const auto& l : facets.lineality) {
    cone.add_inequality(l);
    IntVector neg = l;
    for (auto& x : neg) x = -x;
    cone.add_inequality(neg);
  }
  return cone;
}

void RationalCone::add_inequality(const IntVector& c) {
  if (c.size() != dim_) fail(ErrorCode::DimensionMismatch, "inequality length does not match ambient dimension");
  generators_.reset();
  if (is_zero(c)) return;
  IntVector canon = primitive(c);
  auto it = std::lower_bound(inequalities_.begin(), inequalities_.end(), canon, LexLess{});
  if (it != inequalities_.end() && *it == canon) return;
  inequalities_.insert(it, std::move(canon));
}

void RationalCone::add_inequality(std::span<const mpq_class> c) {
  if (c.size() != dim_) fail(ErrorCode::DimensionMismatch, "inequality length does not match ambient dimension");
  add_inequality(primitive(c));
}

const Generators& RationalCone::generators(const DoubleDescriptionOptions& options) {
  if (!generators_) generators_ = double_description(inequalities_, dim_, options);
  return *generators_;
}

Generators RationalCone::generators_or_compute(const DoubleDescriptionOptions& options) const {
  if (generators_) return *generators_;
  return double_description(inequalities_, dim_, options);
}

Generators extreme_rays(const RationalCone& cone, const DoubleDescriptionOptions& options) {
  return cone.generators_or_compute(options);
}

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(ErrorCode::DimensionMismatch, "intersecting cones of different dimension");
  RationalCone out(a.ambient_dim(), a.inequalities());
  for (const auto& c : b.inequalities()) out.add_inequality(c);
  return out;
}

bool valid_on_generators(const IntVector& c, const Generators& gens) {
  for (const auto& r : gens.rays)
    if (sgn(dot(c, r)) < 0) return false;
  for (const auto& l : gens.lineality)
    if (sgn(dot(c, l)) != 0) return false;
  return true;
}

bool valid_on_cone(const IntVector& c, const RationalCone& cone) {
  if (c.size() != cone.ambient_dim()) fail(ErrorCode::DimensionMismatch, "functional length does not match cone");
  if (is_zero(c)) return true;
  return valid_on_generators(c, cone.generators_or_compute());
}

bool valid_on_cone(std::span<const mpq_class> c, const RationalCone& cone) {
  if (c.size() != cone.ambient_dim()) fail(ErrorCode::DimensionMismatch, "functional length does not match cone");
  return valid_on_cone(primitive(c), cone);
}

}  // namespace optcorr
