#include "core/named_states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace optcorr {

namespace {

std::vector<Subsystem> ab(int d_a, int d_b) { return {{"A", d_a}, {"B", d_b}}; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, "not a number: '" + s + "'");
  }
  if (used != s.size()) fail(ErrorCode::Parse, "not a number: '" + s + "'");
  return v;
}

long parse_int(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, "not an integer: '" + s + "'");
  }
  if (used != s.size()) fail(ErrorCode::Parse, "not an integer: '" + s + "'");
  return v;
}

std::vector<long> int_args(const std::string& args, std::size_t n, const std::string& name) {
  const auto parts = split(args, ',');
  if (parts.size() != n) fail(ErrorCode::Parse, name + " expects " + std::to_string(n) + " comma-separated integers");
  std::vector<long> out;
  for (const auto& p : parts) out.push_back(parse_int(p));
  return out;
}

void check_probabilities(const std::vector<double>& p) {
  if (p.empty()) fail(ErrorCode::InvalidArgument, "probability vector is empty");
  double sum = 0;
  for (double x : p) {
    if (!(x >= 0.0)) fail(ErrorCode::InvalidArgument, "probabilities must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-10) fail(ErrorCode::InvalidArgument, "probabilities must sum to 1");
}

}  // namespace

DensityMatrix bell_state() {
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(ab(2, 2), psi);
}

DensityMatrix classical_state(const std::vector<double>& p) {
  check_probabilities(p);
  const int d = static_cast<int>(p.size());
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) m(i * d + i, i * d + i) = p[i];
  return DensityMatrix(ab(d, d), m);
}

DensityMatrix antisymmetric_state(int d) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "antisymmetric state needs d >= 2");
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Vector v = Vector::Zero(d * d);
      v(i * d + j) = 1.0 / std::sqrt(2.0);
      v(j * d + i) = -1.0 / std::sqrt(2.0);
      m += v * v.adjoint();
    }
  m /= d * (d - 1) / 2.0;
  return DensityMatrix(ab(d, d), m);
}

DensityMatrix symmetric_random_state(int d, std::uint64_t seed) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  Matrix m = Matrix::Zero(d * d, d * d);
  double total = 0;
  for (int k = 0; k < 2; ++k) {
    Vector g = random::gaussian_vector(d * d, rng);
    Vector v(d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) v(i * d + j) = g(i * d + j) + g(j * d + i);
    v /= v.norm();
    const double w = u(rng);
    m += w * v * v.adjoint();
    total += w;
  }
  m /= total;
  return DensityMatrix(ab(d, d), ops::hermitian_part(m));
}

DensityMatrix pure_random_state(int d, std::uint64_t seed) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  return random::random_pure_state(ab(d, d), seed);
}

DensityMatrix mixed_random_state(int d_a, int d_b, std::uint64_t seed) {
  if (d_a < 1 || d_b < 1) fail(ErrorCode::InvalidArgument, "dimensions must be >= 1");
  return random::random_state(ab(d_a, d_b), seed);
}

DensityMatrix local_random_state(int d_a, int d_b, std::uint64_t seed) {
  if (d_a < 1 || d_b < 1) fail(ErrorCode::InvalidArgument, "dimensions must be >= 1");
  Rng rng(seed);
  const Matrix ra = random::induced_mixed(d_a, d_a, rng);
  const Matrix rb = random::induced_mixed(d_b, d_b, rng);
  return tensor(DensityMatrix({{"A", d_a}}, ra), DensityMatrix({{"B", d_b}}, rb));
}

DensityMatrix bipartite_product(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const DensityMatrix r1 = relabel(permute(rho1, {"A", "B"}), {"A1", "B1"});
  const DensityMatrix r2 = relabel(permute(rho2, {"A", "B"}), {"A2", "B2"});
  return group(tensor(r1, r2), {{"A", {"A1", "A2"}}, {"B", {"B1", "B2"}}});
}

DensityMatrix classical_extension(const std::vector<double>& p, int d_v, std::uint64_t seed) {
  check_probabilities(p);
  if (d_v < 1) fail(ErrorCode::InvalidArgument, "d_v must be >= 1");
  const int d = static_cast<int>(p.size());
  const int d_f = std::max(d_v, (d + d_v - 1) / d_v);
  Rng rng(seed);
  // Orthonormal v_i keep the AB marginal diagonal.
  const Matrix v = random::haar_isometry(d_v * d_f, d, rng);
  // |Psi> = sum_i sqrt(p_i) |i>_A |i>_B |v_i>_{VF}
  Vector psi = Vector::Zero(d * d * d_v * d_f);
  for (int i = 0; i < d; ++i) psi.segment((i * d + i) * d_v * d_f, d_v * d_f) = std::sqrt(p[i]) * v.col(i);
  const DensityMatrix full =
      DensityMatrix::from_pure({{"A", d}, {"B", d}, {"V", d_v}, {"F", d_f}}, psi);
  return partial_trace(full, {"A", "B", "V"});
}

DensityMatrix named_state(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto need_args = [&] {
    if (colon == std::string::npos || args.empty()) fail(ErrorCode::Parse, "named state '" + head + "' needs arguments");
  };

  if (head == "bell") {
    if (colon != std::string::npos) fail(ErrorCode::Parse, "bell takes no arguments");
    return bell_state();
  }
  if (head == "classical") {
    need_args();
    std::vector<double> p;
    for (const auto& part : split(args, ',')) p.push_back(parse_double(part));
    return classical_state(p);
  }
  if (head == "antisym") {
    need_args();
    return antisymmetric_state(static_cast<int>(int_args(args, 1, head)[0]));
  }
  if (head == "symmetric-random") {
    need_args();
    const auto a = int_args(args, 2, head);
    return symmetric_random_state(static_cast<int>(a[0]), static_cast<std::uint64_t>(a[1]));
  }
  if (head == "pure-random") {
    need_args();
    const auto a = int_args(args, 2, head);
    return pure_random_state(static_cast<int>(a[0]), static_cast<std::uint64_t>(a[1]));
  }
  if (head == "mixed-random") {
    need_args();
    const auto a = int_args(args, 3, head);
    return mixed_random_state(static_cast<int>(a[0]), static_cast<int>(a[1]), static_cast<std::uint64_t>(a[2]));
  }
  if (head == "local-random") {
    need_args();
    const auto a = int_args(args, 3, head);
    return local_random_state(static_cast<int>(a[0]), static_cast<int>(a[1]), static_cast<std::uint64_t>(a[2]));
  }
  if (head == "product") {
    need_args();
    const auto semi = args.find(';');
    if (semi == std::string::npos) fail(ErrorCode::Parse, "product expects '<spec>;<spec>'");
    return bipartite_product(named_state(args.substr(0, semi)), named_state(args.substr(semi + 1)));
  }
  fail(ErrorCode::UnknownName, "unknown named state '" + head + "'");
}

}  // namespace optcorr
