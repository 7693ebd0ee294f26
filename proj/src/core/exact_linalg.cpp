#include "core/exact_linalg.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace optcorr {

mpz_class dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "dot product of vectors of different length");
  mpz_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

mpq_class dot(std::span<const mpq_class> a, const IntVector& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "dot product of vectors of different length");
  mpq_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) == 0; });
}

IntVector primitive(IntVector v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (sgn(g) == 0) return v;
  if (g != 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

IntVector primitive(std::span<const mpq_class> v) {
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (l / v[i].get_den());
  return primitive(std::move(out));
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RationalVector>& m, std::size_t dim) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    const mpq_class pv = m[r][c];
    for (auto& x : m[r]) x /= pv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const mpq_class f = m[i][c];
      for (std::size_t j = c; j < dim; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<RationalVector> to_rows(const std::vector<IntVector>& rows, std::size_t dim) {
  std::vector<RationalVector> m;
  m.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != dim) fail(ErrorCode::DimensionMismatch, "row length does not match ambient dimension");
    m.emplace_back(row.begin(), row.end());
  }
  return m;
}

}  // namespace

std::vector<IntVector> nullspace(const std::vector<IntVector>& rows, std::size_t dim) {
  auto m = to_rows(rows, dim);
  const auto pivots = rref(m, dim);
  std::vector<bool> is_pivot(dim, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(dim);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
    basis.push_back(primitive(std::span<const mpq_class>(v)));
  }
  return basis;
}

std::size_t rank(const std::vector<IntVector>& rows, std::size_t dim) {
  if (rows.empty()) return 0;
  auto m = to_rows(rows, dim);
  return rref(m, dim).size();
}

IntVector to_int_vector(std::span<const long> v) { return IntVector(v.begin(), v.end()); }

RationalVector to_rational_vector(const IntVector& v) { return RationalVector(v.begin(), v.end()); }

}  // namespace optcorr
