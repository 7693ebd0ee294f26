#pragma once

// Linear functionals of subset entropies on a small multi-party system.
//
// Subsets are bitmasks over the party list (bit i = party i). The nonempty
// subsets are enumerated by counting, so subset index == mask and the
// coefficient of mask m is stored at position m - 1. S of the empty set is
// zero and never stored.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

namespace optcorr {

using Subset = std::uint32_t;

class PartySet {
 public:
  explicit PartySet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t num_subsets() const { return (std::size_t{1} << labels_.size()) - 1; }
  Subset full() const { return static_cast<Subset>(num_subsets()); }
  const std::vector<std::string>& labels() const { return labels_; }

  Subset mask_of(const std::string& label) const;
  Subset mask_of(std::initializer_list<const char*> labels) const;
  // Concatenated labels in any order, e.g. "A1A2B"; longest label wins.
  Subset parse_subset(const std::string& text) const;
  // Concatenated labels in party order; "" for the empty subset.
  std::string label(Subset s) const;

  bool operator==(const PartySet&) const = default;

 private:
  std::vector<std::string> labels_;
};

/// Coefficients over the nonempty subsets of a party set, exact rationals.
class EntropyFunctional {
 public:
  explicit EntropyFunctional(PartySet parties);

  const PartySet& parties() const { return parties_; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  std::size_t dim() const { return coeffs_.size(); }

  const mpq_class& coeff(Subset s) const;
  // Adds c * S_s; the empty subset contributes nothing.
  void add_term(Subset s, const mpq_class& c);

  bool is_zero() const;
  double evaluate(std::span<const double> entropies) const;

  EntropyFunctional& operator+=(const EntropyFunctional& other);
  EntropyFunctional& operator-=(const EntropyFunctional& other);
  EntropyFunctional& operator*=(const mpq_class& k);
  friend EntropyFunctional operator+(EntropyFunctional a, const EntropyFunctional& b) { return a += b; }
  friend EntropyFunctional operator-(EntropyFunctional a, const EntropyFunctional& b) { return a -= b; }
  friend EntropyFunctional operator*(const mpq_class& k, EntropyFunctional a) { return a *= k; }
  bool operator==(const EntropyFunctional& other) const;

  // (subset label, numerator, denominator) for every nonzero coefficient.
  using Term = std::tuple<std::string, std::string, std::string>;
  std::vector<Term> terms() const;
  static EntropyFunctional from_terms(PartySet parties, const std::vector<Term>& terms);

 private:
  PartySet parties_;
  std::vector<mpq_class> coeffs_;
};

/// I(X:Y|Z) = S_XZ + S_YZ - S_XYZ - S_Z.
EntropyFunctional cmi_functional(const PartySet& parties, Subset x, Subset y, Subset z = 0);
/// S(C|X) + S(C|Y) = S_CX + S_CY - S_X - S_Y.
EntropyFunctional wm_functional(const PartySet& parties, Subset c, Subset x, Subset y);
/// S(X|Y) = S_XY - S_Y.
EntropyFunctional conditional_entropy(const PartySet& parties, Subset x, Subset y);

// Slot order of alpha vectors: (A, B, V, AB, AV, BV, ABV).
inline constexpr std::size_t kAlphaSlots = 7;
// Mask of each alpha slot over the three-party set (A, B, V), bit0 = A.
inline constexpr std::array<Subset, kAlphaSlots> kAlphaSlotMask = {1, 2, 4, 3, 5, 6, 7};
inline constexpr std::array<const char*, kAlphaSlots> kAlphaSlotName = {"A", "B", "V", "AB", "AV", "BV", "ABV"};

template <class T>
struct BasicAlpha {
  std::array<T, kAlphaSlots> c{};

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }
  bool operator==(const BasicAlpha&) const = default;

  static BasicAlpha unit(std::size_t slot) {
    BasicAlpha a;
    a.c[slot] = T(1);
    return a;
  }
};

using RationalAlpha = BasicAlpha<mpq_class>;
using Alpha = BasicAlpha<double>;

Alpha to_double(const RationalAlpha& a);
RationalAlpha to_rational(std::span<const long> ints);

/// Images of A, B and V as disjoint subsets of a larger party set.
struct Grouping {
  Subset a = 0;
  Subset b = 0;
  Subset v = 0;
};

/// Sum over slots of alpha_J * S_{g(J)}, where g(J) is the union of the images.
EntropyFunctional alpha_to_functional(const RationalAlpha& alpha, const PartySet& parties,
                                      const Grouping& grouping);

/// The canonical three-party set (A, B, V).
const PartySet& abv_parties();

}  // namespace optcorr
