#pragma once

// Small exact linear algebra over the rationals, enough for cone work in
// ambient dimension up to a few dozen.

#include <span>
#include <vector>

#include <gmpxx.h>

namespace optcorr {

using IntVector = std::vector<mpz_class>;
using RationalVector = std::vector<mpq_class>;

mpz_class dot(const IntVector& a, const IntVector& b);
mpq_class dot(std::span<const mpq_class> a, const IntVector& b);

/// Scales v by the positive rational making it an integer vector with gcd 1.
IntVector primitive(std::span<const mpq_class> v);
IntVector primitive(IntVector v);
bool is_zero(const IntVector& v);

/// Basis of {x : row . x = 0 for all rows}, one primitive integer vector per
/// free column of the reduced row echelon form.
std::vector<IntVector> nullspace(const std::vector<IntVector>& rows, std::size_t dim);
std::size_t rank(const std::vector<IntVector>& rows, std::size_t dim);

IntVector to_int_vector(std::span<const long> v);
RationalVector to_rational_vector(const IntVector& v);

}  // namespace optcorr
