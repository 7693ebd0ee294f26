#include "core/entropy_space.hpp"

#include <algorithm>
#include <set>

#include "core/errors.hpp"

namespace optcorr {

PartySet::PartySet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty() || labels_.size() > 16) fail(ErrorCode::InvalidArgument, "party set must have 1..16 parties");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) fail(ErrorCode::InvalidArgument, "empty party label");
    if (!seen.insert(l).second) fail(ErrorCode::InvalidArgument, "duplicate party label '" + l + "'");
  }
}

Subset PartySet::mask_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return Subset{1} << i;
  fail(ErrorCode::UnknownName, "unknown party label '" + label + "'");
}

Subset PartySet::mask_of(std::initializer_list<const char*> labels) const {
  Subset m = 0;
  for (const char* l : labels) m |= mask_of(std::string(l));
  return m;
}

Subset PartySet::parse_subset(const std::string& text) const {
  Subset m = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t best = labels_.size();
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      const auto& l = labels_[i];
      if (text.compare(pos, l.size(), l) == 0 && (best == labels_.size() || l.size() > labels_[best].size()))
        best = i;
    }
    if (best == labels_.size()) fail(ErrorCode::Parse, "cannot parse subset label '" + text + "'");
    m |= Subset{1} << best;
    pos += labels_[best].size();
  }
  return m;
}

std::string PartySet::label(Subset s) const {
  std::string out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (s >> i & 1u) out += labels_[i];
  return out;
}

EntropyFunctional::EntropyFunctional(PartySet parties)
    : parties_(std::move(parties)), coeffs_(parties_.num_subsets()) {}

const mpq_class& EntropyFunctional::coeff(Subset s) const {
  if (s == 0 || s > parties_.full()) fail(ErrorCode::InvalidArgument, "subset out of range");
  return coeffs_[s - 1];
}

void EntropyFunctional::add_term(Subset s, const mpq_class& c) {
  if (s == 0) return;
  if (s > parties_.full()) fail(ErrorCode::InvalidArgument, "subset out of range");
  coeffs_[s - 1] += c;
}

bool EntropyFunctional::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return sgn(c) == 0; });
}

double EntropyFunctional::evaluate(std::span<const double> entropies) const {
  if (entropies.size() != coeffs_.size()) fail(ErrorCode::DimensionMismatch, "entropy vector length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) acc += coeffs_[i].get_d() * entropies[i];
  return acc;
}

EntropyFunctional& EntropyFunctional::operator+=(const EntropyFunctional& other) {
  if (!(parties_ == other.parties_)) fail(ErrorCode::DimensionMismatch, "functionals over different party sets");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

EntropyFunctional& EntropyFunctional::operator-=(const EntropyFunctional& other) {
  if (!(parties_ == other.parties_)) fail(ErrorCode::DimensionMismatch, "functionals over different party sets");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

EntropyFunctional& EntropyFunctional::operator*=(const mpq_class& k) {
  for (auto& c : coeffs_) c *= k;
  return *this;
}

bool EntropyFunctional::operator==(const EntropyFunctional& other) const {
  return parties_ == other.parties_ && coeffs_ == other.coeffs_;
}

std::vector<EntropyFunctional::Term> EntropyFunctional::terms() const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    out.emplace_back(parties_.label(static_cast<Subset>(i + 1)), coeffs_[i].get_num().get_str(),
                     coeffs_[i].get_den().get_str());
  }
  return out;
}

EntropyFunctional EntropyFunctional::from_terms(PartySet parties, const std::vector<Term>& terms) {
  EntropyFunctional f(std::move(parties));
  for (const auto& [label, num, den] : terms) {
    mpq_class q;
    try {
      q = mpq_class(mpz_class(num), mpz_class(den));
    } catch (const std::invalid_argument&) {
      fail(ErrorCode::Parse, "bad rational " + num + "/" + den);
    }
    if (sgn(q.get_den()) == 0) fail(ErrorCode::Parse, "zero denominator");
    q.canonicalize();
    f.add_term(f.parties_.parse_subset(label), q);
  }
  return f;
}

namespace {

void check_subsets(const PartySet& parties, std::initializer_list<Subset> nonempty, std::initializer_list<Subset> all) {
  for (Subset s : all)
    if (s > parties.full()) fail(ErrorCode::InvalidArgument, "subset outside party set");
  for (Subset s : nonempty)
    if (s == 0) fail(ErrorCode::EmptyArgument, "argument subset must be nonempty");
  Subset seen = 0;
  for (Subset s : all) {
    if (seen & s) fail(ErrorCode::Overlap, "argument subsets must be pairwise disjoint");
    seen |= s;
  }
}

}  // namespace

EntropyFunctional cmi_functional(const PartySet& parties, Subset x, Subset y, Subset z) {
  check_subsets(parties, {x, y}, {x, y, z});
  EntropyFunctional f(parties);
  f.add_term(x | z, 1);
  f.add_term(y | z, 1);
  f.add_term(x | y | z, -1);
  f.add_term(z, -1);
  return f;
}

EntropyFunctional wm_functional(const PartySet& parties, Subset c, Subset x, Subset y) {
  check_subsets(parties, {c, x, y}, {c, x, y});
  EntropyFunctional f(parties);
  f.add_term(c | x, 1);
  f.add_term(c | y, 1);
  f.add_term(x, -1);
  f.add_term(y, -1);
  return f;
}

EntropyFunctional conditional_entropy(const PartySet& parties, Subset x, Subset y) {
  check_subsets(parties, {x}, {x, y});
  EntropyFunctional f(parties);
  f.add_term(x | y, 1);
  f.add_term(y, -1);
  return f;
}

Alpha to_double(const RationalAlpha& a) {
  Alpha out;
  for (std::size_t i = 0; i < kAlphaSlots; ++i) out[i] = a[i].get_d();
  return out;
}

RationalAlpha to_rational(std::span<const long> ints) {
  if (ints.size() != kAlphaSlots) fail(ErrorCode::DimensionMismatch, "alpha needs 7 entries");
  RationalAlpha a;
  for (std::size_t i = 0; i < kAlphaSlots; ++i) a[i] = ints[i];
  return a;
}

EntropyFunctional alpha_to_functional(const RationalAlpha& alpha, const PartySet& parties, const Grouping& g) {
  if ((g.a & g.b) || (g.a & g.v) || (g.b & g.v)) fail(ErrorCode::Overlap, "grouping images overlap");
  if ((g.a | g.b | g.v) > parties.full()) fail(ErrorCode::InvalidArgument, "grouping image outside party set");
  const std::array<Subset, 3> image = {g.a, g.b, g.v};
  EntropyFunctional f(parties);
  for (std::size_t slot = 0; slot < kAlphaSlots; ++slot) {
    if (sgn(alpha[slot]) == 0) continue;
    Subset u = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (!(kAlphaSlotMask[slot] >> k & 1u)) continue;
      if (image[k] == 0)
        fail(ErrorCode::EmptyArgument, std::string("empty grouping image under nonzero coefficient alpha_") +
                                           kAlphaSlotName[slot]);
      u |= image[k];
    }
    f.add_term(u, alpha[slot]);
  }
  return f;
}

const PartySet& abv_parties() {
  static const PartySet parties({"A", "B", "V"});
  return parties;
}

}  // namespace optcorr
