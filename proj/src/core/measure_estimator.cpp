#include "core/measure_estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "core/errors.hpp"

namespace optcorr {

namespace {

constexpr double kRankFloor = 1e-10;
constexpr double kInvLn2 = 1.4426950408889634;

// Thin Q factor with positive diagonal R; the QR retraction onto the Stiefel manifold.
Matrix qr_retract(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j) {
    const Complex d = qr.matrixQR()(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint64_t out[1];
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  out[0] = (std::uint64_t{words[0]} << 32) | words[1];
  return out[0];
}

struct Start {
  std::string kind;
  ExtensionAnsatz ansatz;
};

struct RunResult {
  Matrix w;
  RestartRecord record;
};

RunResult optimize(const ExtensionObjective& obj, Matrix w, const EstimatorConfig& cfg, const std::string& kind) {
  Matrix grad;
  double f = obj.value_and_gradient(w, grad);
  double step = 1.0;
  double best = f;
  std::vector<double> history;
  history.reserve(cfg.max_iters + 1);
  history.push_back(best);
  bool converged = false;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    // Riemannian gradient: project onto the tangent space at w.
    const Matrix wg = w.adjoint() * grad;
    const Matrix xi = grad - w * ((wg + wg.adjoint()) / 2.0);
    const double norm2 = xi.squaredNorm();
    if (norm2 < 1e-24) {
      converged = true;
      break;
    }
    bool accepted = false;
    Matrix trial;
    double f_trial = 0.0;
    for (int bt = 0; bt < 40; ++bt) {
      trial = qr_retract(w - step * xi);
      f_trial = obj.value(trial);
      if (f_trial <= f - 1e-4 * step * norm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      converged = true;
      break;
    }
    w = std::move(trial);
    f = obj.value_and_gradient(w, grad);
    step = std::min(step * 2.0, 1e3);
    best = std::min(best, f);
    history.push_back(best);
    const auto n = static_cast<int>(history.size());
    if (n > cfg.window && history[n - 1 - cfg.window] - best < cfg.tolerance) {
      converged = true;
      ++it;
      break;
    }
  }
  RunResult out{std::move(w), {kind, 0.0, it, converged}};
  out.record.value = obj.exact_value(out.w);
  return out;
}

}  // namespace

Purification purify(const DensityMatrix& rho_ab) {
  if (rho_ab.labels() != std::vector<std::string>{"A", "B"})
    fail(ErrorCode::InvalidArgument, "purify expects a state on exactly (A, B)");
  Eigen::SelfAdjointEigenSolver<Matrix> es(ops::hermitian_part(rho_ab.matrix()));
  if (es.info() != Eigen::Success) fail(ErrorCode::Numerical, "eigensolver failed");
  const int n = rho_ab.total_dim();
  std::vector<int> kept;
  for (int i = n - 1; i >= 0; --i)
    if (es.eigenvalues()(i) > kRankFloor) kept.push_back(i);
  Purification p;
  p.d_a = rho_ab.dim_of("A");
  p.d_b = rho_ab.dim_of("B");
  p.d_e = static_cast<int>(kept.size());
  p.psi.resize(n, p.d_e);
  p.eigenvalues.resize(p.d_e);
  for (int k = 0; k < p.d_e; ++k) {
    Vector v = es.eigenvectors().col(kept[k]);
    for (int i = 0; i < n; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        v *= std::conj(v(i)) / std::abs(v(i));
        break;
      }
    }
    const double lambda = es.eigenvalues()(kept[k]);
    p.eigenvalues(k) = lambda;
    p.psi.col(k) = std::sqrt(lambda) * v;
  }
  return p;
}

double ExtensionAnsatz::isometry_defect() const {
  return (w.adjoint() * w - Matrix::Identity(d_e, d_e)).cwiseAbs().maxCoeff();
}

std::vector<double> ExtensionAnsatz::parameters() const {
  std::vector<double> out;
  out.reserve(2 * w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    out.push_back(w.data()[i].real());
    out.push_back(w.data()[i].imag());
  }
  return out;
}

ExtensionAnsatz ExtensionAnsatz::from_parameters(int d_e, int d_v, int d_f, const std::vector<double>& params) {
  if (d_e < 1 || d_v < 1 || d_f < 1) fail(ErrorCode::InvalidArgument, "ansatz dimensions must be >= 1");
  const auto n = static_cast<std::size_t>(d_v) * d_f * d_e;
  if (params.size() != 2 * n) fail(ErrorCode::DimensionMismatch, "ansatz parameter count mismatch");
  ExtensionAnsatz a{d_e, d_v, d_f, Matrix(d_v * d_f, d_e)};
  for (std::size_t i = 0; i < n; ++i) a.w.data()[i] = Complex(params[2 * i], params[2 * i + 1]);
  return a;
}

ExtensionAnsatz trivial_ansatz(int d_e, int d_v, int d_f) {
  if (d_f < d_e) fail(ErrorCode::InvalidArgument, "trivial extension needs d_f >= d_e");
  ExtensionAnsatz a{d_e, d_v, d_f, Matrix::Zero(d_v * d_f, d_e)};
  for (int e = 0; e < d_e; ++e) a.w(0 * d_f + e, e) = 1.0;
  return a;
}

ExtensionAnsatz purification_ansatz(int d_e, int d_v, int d_f) {
  if (d_v < d_e) fail(ErrorCode::InvalidArgument, "purification ansatz needs d_v >= d_e");
  ExtensionAnsatz a{d_e, d_v, d_f, Matrix::Zero(d_v * d_f, d_e)};
  for (int e = 0; e < d_e; ++e) a.w(e * d_f + 0, e) = 1.0;
  return a;
}

ExtensionAnsatz random_ansatz(int d_e, int d_v, int d_f, Rng& rng) {
  return {d_e, d_v, d_f, random::haar_isometry(d_v * d_f, d_e, rng)};
}

ExtensionAnsatz ansatz_from_pure_extension(const Purification& p, const Matrix& phi, int d_v, int d_f) {
  if (phi.rows() != p.psi.rows() || phi.cols() != d_v * d_f)
    fail(ErrorCode::DimensionMismatch, "extension vector has the wrong shape");
  // psi = U sqrt(Lambda) with orthonormal U, so W^T = Lambda^{-1/2} U^dagger phi.
  Matrix wt = p.psi.adjoint() * phi;
  for (int k = 0; k < p.d_e; ++k) wt.row(k) /= p.eigenvalues(k);
  ExtensionAnsatz a{p.d_e, d_v, d_f, wt.transpose()};
  if (a.isometry_defect() > 1e-6) fail(ErrorCode::InvalidArgument, "vector is not an extension of this purification");
  a.w = qr_retract(a.w);
  return a;
}

ExtensionAnsatz product_ansatz(const Purification& p1, const ExtensionAnsatz& w1, const Purification& p2,
                               const ExtensionAnsatz& w2, const Purification& product) {
  const int a1 = p1.d_a, b1 = p1.d_b, a2 = p2.d_a, b2 = p2.d_b;
  const int v1 = w1.d_v, f1 = w1.d_f, v2 = w2.d_v, f2 = w2.d_f;
  if (product.d_a != a1 * a2 || product.d_b != b1 * b2)
    fail(ErrorCode::DimensionMismatch, "product purification does not match the factors");
  // Extension vectors of the factors: d_ab x (d_v d_f).
  const Matrix phi1 = p1.psi * w1.w.transpose();
  const Matrix phi2 = p2.psi * w2.w.transpose();
  const int d_v = v1 * v2, d_f = f1 * f2;
  Matrix phi = Matrix::Zero(product.psi.rows(), d_v * d_f);
  for (int x1 = 0; x1 < a1; ++x1)
    for (int y1 = 0; y1 < b1; ++y1)
      for (int x2 = 0; x2 < a2; ++x2)
        for (int y2 = 0; y2 < b2; ++y2) {
          const int row = ((x1 * a2 + x2) * b1 + y1) * b2 + y2;  // (A1A2)(B1B2)
          for (int s1 = 0; s1 < v1; ++s1)
            for (int g1 = 0; g1 < f1; ++g1)
              for (int s2 = 0; s2 < v2; ++s2)
                for (int g2 = 0; g2 < f2; ++g2) {
                  const int col = (s1 * v2 + s2) * d_f + (g1 * f2 + g2);
                  phi(row, col) = phi1(x1 * b1 + y1, s1 * f1 + g1) * phi2(x2 * b2 + y2, s2 * f2 + g2);
                }
        }
  return ansatz_from_pure_extension(product, phi, d_v, d_f);
}

Matrix product_purification_witness(const DensityMatrix& rho_ab) {
  const Matrix ra = partial_trace(rho_ab, {"A"}).matrix();
  const Matrix rb = partial_trace(rho_ab, {"B"}).matrix();
  Matrix kron(ra.rows() * rb.rows(), ra.cols() * rb.cols());
  for (Eigen::Index i = 0; i < ra.rows(); ++i)
    for (Eigen::Index j = 0; j < ra.cols(); ++j) kron.block(i * rb.rows(), j * rb.cols(), rb.rows(), rb.cols()) = ra(i, j) * rb;
  if ((kron - rho_ab.matrix()).cwiseAbs().maxCoeff() > 1e-9) fail(ErrorCode::InvalidArgument, "state is not a product rho_A (x) rho_B");
  auto sqrt_psd = [](const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(ops::hermitian_part(m));
    return Matrix(es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                  es.eigenvectors().adjoint());
  };
  // |sqrt(rho)> = sum_ij sqrt(rho)_ij |i>|j> purifies rho.
  const Matrix sa = sqrt_psd(ra), sb = sqrt_psd(rb);
  const Eigen::Index da = sa.rows(), db = sb.rows();
  Matrix phi(da * db, da * db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < db; ++b)
      for (Eigen::Index v = 0; v < da; ++v)
        for (Eigen::Index f = 0; f < db; ++f) phi(a * db + b, v * db + f) = sa(a, v) * sb(b, f);
  return phi;
}

DensityMatrix extension_from_ansatz(const Purification& p, const ExtensionAnsatz& ansatz) {
  if (ansatz.d_e != p.d_e || ansatz.w.rows() != ansatz.d_v * ansatz.d_f || ansatz.w.cols() != p.d_e)
    fail(ErrorCode::DimensionMismatch, "ansatz dimensions do not match the purification");
  if (ansatz.isometry_defect() > 1e-10) fail(ErrorCode::InvalidArgument, "ansatz matrix is not an isometry");
  const Matrix t = p.psi * ansatz.w.transpose();  // d_ab x (d_v d_f)
  const int d_ab = static_cast<int>(p.psi.rows());
  Matrix phi2(d_ab * ansatz.d_v, ansatz.d_f);
  for (int x = 0; x < d_ab; ++x)
    for (int v = 0; v < ansatz.d_v; ++v) phi2.row(x * ansatz.d_v + v) = t.block(x, v * ansatz.d_f, 1, ansatz.d_f);
  DensityMatrix rho({{"A", p.d_a}, {"B", p.d_b}, {"V", ansatz.d_v}}, ops::hermitian_part(phi2 * phi2.adjoint()));
  const std::vector<int> dims = {p.d_a, p.d_b, ansatz.d_v};
  const Matrix back = ops::partial_trace(rho.matrix(), dims, 0b011);
  const Matrix original = p.psi * p.psi.adjoint();
  if ((back - original).cwiseAbs().maxCoeff() > 1e-9)
    fail(ErrorCode::Numerical, "extension does not reduce to rho_AB");
  return rho;
}

DensityMatrix extension_from_ansatz(const DensityMatrix& rho_ab, const ExtensionAnsatz& ansatz) {
  return extension_from_ansatz(purify(rho_ab), ansatz);
}

ExtensionObjective::ExtensionObjective(const Alpha& alpha, const Purification& p, int d_v, int d_f,
                                       double regularization)
    : alpha_(alpha), p_(p), d_v_(d_v), d_f_(d_f), eps_(regularization) {}

Matrix ExtensionObjective::extension_vector(const Matrix& w) const {
  const Matrix t = p_.psi * w.transpose();
  const int d_ab = static_cast<int>(p_.psi.rows());
  Matrix phi2(d_ab * d_v_, d_f_);
  for (int x = 0; x < d_ab; ++x)
    for (int v = 0; v < d_v_; ++v) phi2.row(x * d_v_ + v) = t.block(x, v * d_f_, 1, d_f_);
  return phi2;
}

double ExtensionObjective::value(const Matrix& w) const {
  const Matrix phi2 = extension_vector(w);
  const Matrix rho = phi2 * phi2.adjoint();
  const std::vector<int> dims = {p_.d_a, p_.d_b, d_v_};
  double f = 0.0;
  for (std::size_t slot = 0; slot < kAlphaSlots; ++slot) {
    if (alpha_[slot] == 0.0) continue;
    const Matrix m = ops::partial_trace(rho, dims, kAlphaSlotMask[slot]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(ops::hermitian_part(m), Eigen::EigenvaluesOnly);
    const double mix = eps_ / static_cast<double>(m.rows());
    double s = 0.0;
    for (double l : es.eigenvalues()) {
      const double r = (1.0 - eps_) * std::max(l, 0.0) + mix;
      s -= r * std::log2(r);
    }
    f += alpha_[slot] * s;
  }
  return f;
}

double ExtensionObjective::value_and_gradient(const Matrix& w, Matrix& grad) const {
  const Matrix phi2 = extension_vector(w);
  const Matrix rho = phi2 * phi2.adjoint();
  const std::vector<int> dims = {p_.d_a, p_.d_b, d_v_};
  const int n = static_cast<int>(rho.rows());
  Matrix h = Matrix::Zero(n, n);
  double f = 0.0;
  for (std::size_t slot = 0; slot < kAlphaSlots; ++slot) {
    if (alpha_[slot] == 0.0) continue;
    const Matrix m = ops::partial_trace(rho, dims, kAlphaSlotMask[slot]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(ops::hermitian_part(m));
    const double mix = eps_ / static_cast<double>(m.rows());
    double s = 0.0;
    Eigen::VectorXd d(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
      const double r = (1.0 - eps_) * std::max(es.eigenvalues()(i), 0.0) + mix;
      s -= r * std::log2(r);
      // dS/drho = -(log2 rho + 1/ln 2), times d(rho_reg)/d(rho) = 1 - eps.
      d(i) = -(std::log2(r) + kInvLn2) * (1.0 - eps_);
    }
    f += alpha_[slot] * s;
    const Matrix g = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    h += alpha_[slot] * (kAlphaSlotMask[slot] == 0b111 ? g : ops::embed(g, dims, kAlphaSlotMask[slot]));
  }
  // df = 2 Re <H phi | d phi>, with phi = (1 (x) W) psi.
  const Matrix m2 = h * phi2;
  const int d_ab = static_cast<int>(p_.psi.rows());
  Matrix mt(d_ab, d_v_ * d_f_);
  for (int x = 0; x < d_ab; ++x)
    for (int v = 0; v < d_v_; ++v) mt.block(x, v * d_f_, 1, d_f_) = m2.row(x * d_v_ + v);
  grad = 2.0 * (mt.transpose() * p_.psi.conjugate());
  return f;
}

double ExtensionObjective::exact_value(const Matrix& w) const {
  const Matrix phi2 = extension_vector(w);
  const Matrix rho = phi2 * phi2.adjoint();
  const std::vector<int> dims = {p_.d_a, p_.d_b, d_v_};
  double f = 0.0;
  for (std::size_t slot = 0; slot < kAlphaSlots; ++slot) {
    if (alpha_[slot] == 0.0) continue;
    f += alpha_[slot] * von_neumann_entropy(ops::partial_trace(rho, dims, kAlphaSlotMask[slot]));
  }
  return f;
}

MeasureEstimate estimate_measure(const Alpha& alpha, const DensityMatrix& rho_ab, const EstimatorConfig& config) {
  MeasureEstimate est = estimate_measure(alpha, purify(rho_ab), config);
  est.lower_bound = lower_bound(alpha, rho_ab);
  if (est.lower_bound) est.gap = est.value - *est.lower_bound;
  return est;
}

MeasureEstimate estimate_measure(const Alpha& alpha, const Purification& p, const EstimatorConfig& config) {
  if (!finiteness_check(alpha))
    fail(ErrorCode::InfiniteMeasure,
         "alpha_V + alpha_AV + alpha_BV + alpha_ABV < 0: the infimum is -infinity");
  if (config.d_v < 0 || config.d_f < 0) fail(ErrorCode::InvalidArgument, "d_v and d_f must be >= 1");
  if (config.restarts < 0 || config.max_iters < 0) fail(ErrorCode::InvalidArgument, "restarts and max_iters must be >= 0");
  const int d_v = config.d_v == 0 ? p.d_a * p.d_b : config.d_v;
  const int d_f = config.d_f == 0 ? d_v * p.d_e : config.d_f;

  std::vector<Start> starts;
  if (d_f >= p.d_e) starts.push_back({"trivial", trivial_ansatz(p.d_e, d_v, d_f)});
  if (d_v >= p.d_e) starts.push_back({"purification", purification_ansatz(p.d_e, d_v, d_f)});
  for (const auto& w : config.warm_starts) {
    if (w.d_e != p.d_e || w.d_v != d_v || w.d_f != d_f)
      fail(ErrorCode::DimensionMismatch, "warm start dimensions do not match the estimator configuration");
    starts.push_back({"warm", w});
  }
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng(restart_seed(config.seed, static_cast<std::uint64_t>(r)));
    starts.push_back({"random", random_ansatz(p.d_e, d_v, d_f, rng)});
  }
  if (starts.empty()) fail(ErrorCode::InvalidArgument, "no starting points: raise restarts or d_f");

  const ExtensionObjective obj(alpha, p, d_v, d_f, config.regularization);
  std::vector<RunResult> results(starts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < starts.size(); i = next++)
      results[i] = optimize(obj, starts[i].ansatz.w, config, starts[i].kind);
  };
  const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(starts.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].record.value < results[best].record.value) best = i;

  MeasureEstimate est;
  est.alpha = alpha;
  est.value = results[best].record.value;
  est.witness = {p.d_e, d_v, d_f, results[best].w};
  est.d_v = d_v;
  est.restarts = config.restarts;
  est.max_iters = config.max_iters;
  est.seed = config.seed;
  est.converged = results[best].record.converged;
  for (const auto& r : results) {
    est.iterations += r.record.iterations;
    est.per_restart.push_back(r.record);
  }
  return est;
}

namespace {

// c > 0 with alpha == c * target, if any.
std::optional<double> positive_multiple(const Alpha& alpha, const Alpha& target) {
  std::optional<double> c;
  for (std::size_t i = 0; i < kAlphaSlots; ++i) {
    if (target[i] == 0.0) {
      if (std::abs(alpha[i]) > 1e-12) return std::nullopt;
      continue;
    }
    const double k = alpha[i] / target[i];
    if (!c) c = k;
    else if (std::abs(k - *c) > 1e-12 * std::max(1.0, std::abs(*c))) return std::nullopt;
  }
  if (!c || *c <= 0.0) return std::nullopt;
  return c;
}

}  // namespace

std::optional<double> lower_bound(const Alpha& alpha, const DensityMatrix& rho_ab) {
  for (const char* name : {"P", "Q", "R"})
    if (auto c = positive_multiple(alpha, named_alpha(name)))
      return *c * 0.5 * std::max(0.0, mutual_information(rho_ab, "A", "B"));
  if (positive_multiple(alpha, named_alpha("sq"))) return 0.0;
  return std::nullopt;
}

Measure parse_measure(const std::string& name) {
  if (name == "P") return Measure::P;
  if (name == "Q") return Measure::Q;
  if (name == "R") return Measure::R;
  if (name == "sq") return Measure::Sq;
  fail(ErrorCode::UnknownName, "unknown measure '" + name + "' (expected P, Q, R or sq)");
}

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::P: return "P";
    case Measure::Q: return "Q";
    case Measure::R: return "R";
    case Measure::Sq: return "sq";
  }
  return "?";
}

Alpha measure_alpha(Measure m) { return named_alpha(measure_name(m)); }

double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

double closed_form(Measure measure, const StateFamily& family, std::optional<double> sq_estimate) {
  if (measure == Measure::Sq) fail(ErrorCode::Uncovered, "no closed form for the squashed-entanglement functional");
  switch (family.kind) {
    case StateFamily::Kind::Pure:
      return family.s_a;
    case StateFamily::Kind::Classical: {
      const double h = shannon_entropy(family.p);
      return measure == Measure::R ? 0.5 * h : h;
    }
    case StateFamily::Kind::Antisymmetric: {
      if (family.d < 2) fail(ErrorCode::InvalidArgument, "antisymmetric family needs d >= 2");
      if (measure != Measure::R) return std::log2(static_cast<double>(family.d));
      if (!sq_estimate) fail(ErrorCode::Uncovered, "E_R on antisymmetric states needs an estimate of inf I(A:B|V)");
      const double s_ab = std::log2(family.d * (family.d - 1) / 2.0);
      return 0.5 * s_ab + 0.5 * *sq_estimate;
    }
  }
  fail(ErrorCode::Uncovered, "uncovered family");
}

}  // namespace optcorr
