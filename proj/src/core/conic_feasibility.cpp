#include "core/conic_feasibility.hpp"

#include "core/errors.hpp"

namespace optcorr {

std::optional<RationalVector> conic_combination(const std::vector<IntVector>& generators, const IntVector& target) {
  const std::size_t d = target.size();
  const std::size_t m = generators.size();
  for (const auto& g : generators)
    if (g.size() != d) fail(ErrorCode::DimensionMismatch, "generator length does not match target");

  // Columns: m multipliers, d artificials, rhs. Rows: one equation per coordinate.
  const std::size_t cols = m + d;
  std::vector<RationalVector> tab(d, RationalVector(cols + 1));
  std::vector<std::size_t> basis(d);
  for (std::size_t i = 0; i < d; ++i) {
    const int flip = sgn(target[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < m; ++j) tab[i][j] = flip * generators[j][i];
    tab[i][m + i] = 1;
    tab[i][cols] = flip * target[i];
    basis[i] = m + i;
  }
  // Reduced costs for minimizing the sum of artificials.
  RationalVector cost(cols + 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < m || j == cols) cost[j] -= tab[i][j];

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = d;
    mpq_class best;
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(tab[i][enter]) <= 0) continue;
      mpq_class ratio = tab[i][cols] / tab[i][enter];
      if (leave == d || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == d) fail(ErrorCode::Numerical, "phase-one simplex reported an unbounded direction");
    const mpq_class pv = tab[leave][enter];
    for (auto& x : tab[leave]) x /= pv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == leave || sgn(tab[i][enter]) == 0) continue;
      const mpq_class f = tab[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
    }
    if (sgn(cost[enter]) != 0) {
      const mpq_class f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * tab[leave][j];
    }
    basis[leave] = enter;
  }

  if (sgn(cost[cols]) != 0) return std::nullopt;
  RationalVector lambda(m);
  for (std::size_t i = 0; i < d; ++i) {
    if (basis[i] < m) {
      lambda[basis[i]] = tab[i][cols];
    } else if (sgn(tab[i][cols]) != 0) {
      return std::nullopt;
    }
  }
  return lambda;
}

bool valid_by_farkas(const IntVector& c, const RationalCone& cone) {
  if (c.size() != cone.ambient_dim()) fail(ErrorCode::DimensionMismatch, "functional length does not match cone");
  if (is_zero(c)) return true;
  return conic_combination(cone.inequalities(), c).has_value();
}

}  // namespace optcorr
