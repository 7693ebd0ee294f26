#include "core/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "core/errors.hpp"

namespace optcorr {

namespace {

constexpr double kEigenFloor = 1e-12;

// Full index -> (kept index, traced index) for a bitmask split of the subsystems.
struct Split {
  int keep_dim = 1;
  int trace_dim = 1;
  std::vector<int> keep_index;
  std::vector<int> trace_index;
};

Split split_indices(std::span<const int> dims, std::uint32_t keep) {
  Split s;
  for (std::size_t i = 0; i < dims.size(); ++i) (keep >> i & 1u ? s.keep_dim : s.trace_dim) *= dims[i];
  const int total = s.keep_dim * s.trace_dim;
  s.keep_index.resize(total);
  s.trace_index.resize(total);
  std::vector<int> digit(dims.size(), 0);
  for (int idx = 0; idx < total; ++idx) {
    int k = 0, t = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (keep >> i & 1u)
        k = k * dims[i] + digit[i];
      else
        t = t * dims[i] + digit[i];
    }
    s.keep_index[idx] = k;
    s.trace_index[idx] = t;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  return s;
}

std::uint32_t mask_for(const DensityMatrix& rho, const std::vector<std::string>& labels) {
  std::uint32_t m = 0;
  for (const auto& l : labels) m |= 1u << rho.index_of(l);
  return m;
}

}  // namespace

namespace ops {

Matrix partial_trace(const Matrix& rho, std::span<const int> dims, std::uint32_t keep) {
  const Split s = split_indices(dims, keep);
  if (rho.rows() != s.keep_dim * s.trace_dim) fail(ErrorCode::DimensionMismatch, "matrix size does not match dims");
  // full[k * trace_dim + t] = full index of (k, t)
  std::vector<int> full(rho.rows());
  for (int idx = 0; idx < rho.rows(); ++idx) full[s.keep_index[idx] * s.trace_dim + s.trace_index[idx]] = idx;
  Matrix out = Matrix::Zero(s.keep_dim, s.keep_dim);
  for (int j = 0; j < s.keep_dim; ++j)
    for (int i = 0; i < s.keep_dim; ++i) {
      Complex acc = 0;
      for (int t = 0; t < s.trace_dim; ++t) acc += rho(full[i * s.trace_dim + t], full[j * s.trace_dim + t]);
      out(i, j) = acc;
    }
  return out;
}

Matrix embed(const Matrix& op, std::span<const int> dims, std::uint32_t keep) {
  const Split s = split_indices(dims, keep);
  if (op.rows() != s.keep_dim) fail(ErrorCode::DimensionMismatch, "operator size does not match kept dims");
  const int total = s.keep_dim * s.trace_dim;
  Matrix out = Matrix::Zero(total, total);
  for (int j = 0; j < total; ++j)
    for (int i = 0; i < total; ++i)
      if (s.trace_index[i] == s.trace_index[j]) out(i, j) = op(s.keep_index[i], s.keep_index[j]);
  return out;
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace ops

void validate_density(const Matrix& m, const StateTolerance& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) fail(ErrorCode::InvalidState, "density matrix must be square and nonempty");
  if (!m.allFinite()) fail(ErrorCode::InvalidState, "density matrix has non-finite entries");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermitian)
    fail(ErrorCode::InvalidState, "density matrix is not Hermitian (max |rho - rho^dagger| = " + std::to_string(herm) + ")");
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol.trace)
    fail(ErrorCode::InvalidState, "density matrix trace is " + std::to_string(tr) + ", expected 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(ops::hermitian_part(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::Numerical, "eigensolver failed");
  if (es.eigenvalues().minCoeff() < -tol.psd)
    fail(ErrorCode::InvalidState,
         "density matrix is not positive semidefinite (min eigenvalue " + std::to_string(es.eigenvalues().minCoeff()) + ")");
}

DensityMatrix::DensityMatrix(std::vector<Subsystem> subsystems, Matrix matrix, const StateTolerance& tol)
    : subsystems_(std::move(subsystems)), matrix_(std::move(matrix)) {
  if (subsystems_.empty()) fail(ErrorCode::InvalidState, "density matrix needs at least one subsystem");
  std::set<std::string> seen;
  int total = 1;
  for (const auto& s : subsystems_) {
    if (s.label.empty()) fail(ErrorCode::InvalidState, "empty subsystem label");
    if (s.dim < 1) fail(ErrorCode::InvalidState, "subsystem '" + s.label + "' has dimension < 1");
    if (!seen.insert(s.label).second) fail(ErrorCode::InvalidState, "duplicate subsystem label '" + s.label + "'");
    total *= s.dim;
  }
  if (matrix_.rows() != total || matrix_.cols() != total)
    fail(ErrorCode::DimensionMismatch, "matrix is " + std::to_string(matrix_.rows()) + "x" +
                                           std::to_string(matrix_.cols()) + " but dims multiply to " +
                                           std::to_string(total));
  validate_density(matrix_, tol);
}

DensityMatrix DensityMatrix::from_pure(std::vector<Subsystem> subsystems, const Vector& psi) {
  const Vector unit = psi / psi.norm();
  return DensityMatrix(std::move(subsystems), unit * unit.adjoint());
}

std::vector<std::string> DensityMatrix::labels() const {
  std::vector<std::string> out;
  for (const auto& s : subsystems_) out.push_back(s.label);
  return out;
}

std::vector<int> DensityMatrix::dims() const {
  std::vector<int> out;
  for (const auto& s : subsystems_) out.push_back(s.dim);
  return out;
}

std::size_t DensityMatrix::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i)
    if (subsystems_[i].label == label) return i;
  fail(ErrorCode::UnknownName, "unknown subsystem label '" + label + "'");
}

int DensityMatrix::dim_of(const std::string& label) const { return subsystems_[index_of(label)].dim; }

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  if (keep.empty()) fail(ErrorCode::EmptyArgument, "partial trace needs a nonempty keep set");
  const std::uint32_t mask = mask_for(rho, keep);
  std::vector<Subsystem> kept;
  for (std::size_t i = 0; i < rho.subsystems().size(); ++i)
    if (mask >> i & 1u) kept.push_back(rho.subsystems()[i]);
  const auto dims = rho.dims();
  Matrix m = ops::partial_trace(rho.matrix(), dims, mask);
  return DensityMatrix(std::move(kept), ops::hermitian_part(m));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<Subsystem> subs = a.subsystems();
  subs.insert(subs.end(), b.subsystems().begin(), b.subsystems().end());
  Matrix m(a.total_dim() * b.total_dim(), a.total_dim() * b.total_dim());
  for (int i = 0; i < a.total_dim(); ++i)
    for (int j = 0; j < a.total_dim(); ++j)
      m.block(i * b.total_dim(), j * b.total_dim(), b.total_dim(), b.total_dim()) = a.matrix()(i, j) * b.matrix();
  return DensityMatrix(std::move(subs), std::move(m));
}

DensityMatrix permute(const DensityMatrix& rho, const std::vector<std::string>& order) {
  const auto& subs = rho.subsystems();
  if (order.size() != subs.size()) fail(ErrorCode::InvalidArgument, "permutation must list every subsystem once");
  std::vector<std::size_t> src(order.size());
  std::vector<Subsystem> out_subs;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!seen.insert(order[i]).second) fail(ErrorCode::InvalidArgument, "permutation repeats '" + order[i] + "'");
    src[i] = rho.index_of(order[i]);
    out_subs.push_back(subs[src[i]]);
  }
  const int n = rho.total_dim();
  const std::size_t k = subs.size();
  // new index for each old index
  std::vector<int> map(n);
  std::vector<int> digit(k, 0);
  for (int idx = 0; idx < n; ++idx) {
    int nidx = 0;
    for (std::size_t i = 0; i < k; ++i) nidx = nidx * out_subs[i].dim + digit[src[i]];
    map[idx] = nidx;
    for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
      if (++digit[i] < subs[i].dim) break;
      digit[i] = 0;
    }
  }
  Matrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(map[i], map[j]) = rho.matrix()(i, j);
  return DensityMatrix(std::move(out_subs), std::move(m));
}

DensityMatrix relabel(const DensityMatrix& rho, const std::vector<std::string>& labels) {
  if (labels.size() != rho.subsystems().size()) fail(ErrorCode::InvalidArgument, "relabel needs one label per subsystem");
  std::vector<Subsystem> subs = rho.subsystems();
  for (std::size_t i = 0; i < subs.size(); ++i) subs[i].label = labels[i];
  return DensityMatrix(std::move(subs), rho.matrix());
}

DensityMatrix group(const DensityMatrix& rho,
                    const std::vector<std::pair<std::string, std::vector<std::string>>>& blocks) {
  std::vector<std::string> order;
  std::vector<Subsystem> subs;
  for (const auto& [label, members] : blocks) {
    int d = 1;
    for (const auto& m : members) {
      order.push_back(m);
      d *= rho.dim_of(m);
    }
    subs.push_back({label, d});
  }
  DensityMatrix p = permute(rho, order);
  return DensityMatrix(std::move(subs), p.matrix());
}

double von_neumann_entropy(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(ops::hermitian_part(rho), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::Numerical, "eigensolver failed");
  double s = 0.0;
  for (double l : es.eigenvalues())
    if (l >= kEigenFloor) s -= l * std::log2(l);
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

std::vector<double> subset_entropies(const DensityMatrix& rho) {
  const auto dims = rho.dims();
  const std::uint32_t n = (1u << dims.size()) - 1;
  std::vector<double> out(n);
  for (std::uint32_t m = 1; m <= n; ++m) out[m - 1] = von_neumann_entropy(ops::partial_trace(rho.matrix(), dims, m));
  return out;
}

EntropyReport entropy_report(const DensityMatrix& rho) {
  const auto labels = rho.labels();
  if (labels != std::vector<std::string>{"A", "B", "V"})
    fail(ErrorCode::InvalidArgument, "expected a state on exactly (A, B, V)");
  const auto s = subset_entropies(rho);
  EntropyReport r;
  for (std::size_t slot = 0; slot < kAlphaSlots; ++slot) r.s[slot] = s[kAlphaSlotMask[slot] - 1];
  return r;
}

double f_alpha(const Alpha& alpha, const EntropyReport& report) {
  double acc = 0.0;
  for (std::size_t i = 0; i < kAlphaSlots; ++i) acc += alpha[i] * report.s[i];
  return acc;
}

double f_alpha(const Alpha& alpha, const DensityMatrix& rho) { return f_alpha(alpha, entropy_report(rho)); }

double mutual_information(const DensityMatrix& rho, const std::string& x, const std::string& y) {
  return von_neumann_entropy(partial_trace(rho, {x})) + von_neumann_entropy(partial_trace(rho, {y})) -
         von_neumann_entropy(partial_trace(rho, {x, y}));
}

DensityMatrix LocalChannel::apply(const DensityMatrix& rho) const {
  const std::size_t idx = rho.index_of(label);
  const auto& subs = rho.subsystems();
  if (subs[idx].dim != d_in) fail(ErrorCode::DimensionMismatch, "channel input dimension does not match '" + label + "'");
  int before = 1, after = 1;
  for (std::size_t i = 0; i < subs.size(); ++i) (i < idx ? before : after) *= (i == idx ? 1 : subs[i].dim);
  auto lift = [&](const Matrix& k) {
    Matrix out = Matrix::Zero(before * k.rows() * after, before * k.cols() * after);
    for (int b = 0; b < before; ++b)
      for (int r = 0; r < k.rows(); ++r)
        for (int c = 0; c < k.cols(); ++c)
          for (int a = 0; a < after; ++a)
            out((b * k.rows() + r) * after + a, (b * k.cols() + c) * after + a) = k(r, c);
    return out;
  };
  const int out_dim = before * d_out * after;
  Matrix m = Matrix::Zero(out_dim, out_dim);
  for (const auto& k : kraus) {
    const Matrix big = lift(k);
    m += big * rho.matrix() * big.adjoint();
  }
  std::vector<Subsystem> out_subs = subs;
  out_subs[idx].dim = d_out;
  return DensityMatrix(std::move(out_subs), ops::hermitian_part(m));
}

LocalChannel random_local_channel(const std::string& label, int d_in, int d_out, int kraus_rank, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1 || kraus_rank < 1) fail(ErrorCode::InvalidArgument, "channel dimensions must be >= 1");
  if (d_out * kraus_rank < d_in)
    fail(ErrorCode::InvalidArgument, "an isometry needs d_out * kraus_rank >= d_in");
  Rng rng(seed);
  const Matrix w = random::haar_isometry(d_out * kraus_rank, d_in, rng);
  LocalChannel ch{label, d_in, d_out, {}};
  // Output index (o, k) with the rank factor k fastest.
  for (int k = 0; k < kraus_rank; ++k) {
    Matrix kr(d_out, d_in);
    for (int o = 0; o < d_out; ++o) kr.row(o) = w.row(o * kraus_rank + k);
    ch.kraus.push_back(std::move(kr));
  }
  return ch;
}

namespace random {

Vector gaussian_vector(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

Matrix haar_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols) fail(ErrorCode::InvalidArgument, "isometry needs rows >= cols");
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Vector haar_pure(int dim, Rng& rng) {
  Vector v = gaussian_vector(dim, rng);
  return v / v.norm();
}

Matrix induced_mixed(int dim, int env_dim, Rng& rng) {
  Matrix g(dim, env_dim);
  for (int j = 0; j < env_dim; ++j) g.col(j) = gaussian_vector(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return ops::hermitian_part(rho);
}

DensityMatrix random_state(const std::vector<Subsystem>& subsystems, std::uint64_t seed) {
  Rng rng(seed);
  int d = 1;
  for (const auto& s : subsystems) d *= s.dim;
  return DensityMatrix(subsystems, induced_mixed(d, d, rng));
}

DensityMatrix random_pure_state(const std::vector<Subsystem>& subsystems, std::uint64_t seed) {
  Rng rng(seed);
  int d = 1;
  for (const auto& s : subsystems) d *= s.dim;
  return DensityMatrix::from_pure(subsystems, haar_pure(d, rng));
}

}  // namespace random

}  // namespace optcorr
