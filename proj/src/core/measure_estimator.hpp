#pragma once

// Variational upper bounds on E_alpha(rho_AB) = inf over extensions rho_ABV of
// f^alpha(rho_ABV).
//
// Every extension with a d_V-dimensional V is reached from one fixed
// purification |psi>_ABE by a channel E -> V, i.e. by an isometry
// W : E -> V (x) F followed by tracing out F. The estimator searches over W
// with Riemannian gradient descent on the complex Stiefel manifold.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/monotone_discovery.hpp"
#include "core/quantum_state.hpp"

namespace optcorr {

/// rho_AB written as sum_i sqrt(lambda_i) |e_i>_AB |i>_E, eigenvalues descending.
struct Purification {
  int d_a = 1;
  int d_b = 1;
  int d_e = 1;
  // d_a*d_b x d_e; column i is sqrt(lambda_i) e_i.
  Matrix psi;
  Eigen::VectorXd eigenvalues;
};

Purification purify(const DensityMatrix& rho_ab);

struct ExtensionAnsatz {
  int d_e = 1;
  int d_v = 1;
  int d_f = 1;
  // (d_v*d_f) x d_e, output index (v, f) with f fastest.
  Matrix w;

  double isometry_defect() const;
  /// Interleaved (re, im) of w in column-major order.
  std::vector<double> parameters() const;
  static ExtensionAnsatz from_parameters(int d_e, int d_v, int d_f, const std::vector<double>& params);
};

ExtensionAnsatz trivial_ansatz(int d_e, int d_v, int d_f);
/// V receives E itself (requires d_v >= d_e); the extension is pure when d_f = 1.
ExtensionAnsatz purification_ansatz(int d_e, int d_v, int d_f);
ExtensionAnsatz random_ansatz(int d_e, int d_v, int d_f, Rng& rng);
/// W with (1 (x) W)|psi> = |phi>, for a pure state phi on AB (x) V (x) F that
/// extends rho_AB; phi is given as a d_ab x (d_v*d_f) matrix.
ExtensionAnsatz ansatz_from_pure_extension(const Purification& p, const Matrix& phi, int d_v, int d_f);
/// Product of two ansaetze for the product purification of rho1 (x) rho2,
/// with V = V1V2, F = F1F2 and the state grouped as (A1A2)(B1B2).
ExtensionAnsatz product_ansatz(const Purification& p1, const ExtensionAnsatz& w1, const Purification& p2,
                               const ExtensionAnsatz& w2, const Purification& product);

/// Pure extension of a product rho_A (x) rho_B with V purifying A and F
/// purifying B (d_v = d_a, d_f = d_b), as a d_ab x (d_v*d_f) matrix.
Matrix product_purification_witness(const DensityMatrix& rho_ab);

/// rho_ABV = Tr_F[(1 (x) W)|psi><psi|(1 (x) W)^dagger] on (A, B, V).
DensityMatrix extension_from_ansatz(const Purification& p, const ExtensionAnsatz& ansatz);
DensityMatrix extension_from_ansatz(const DensityMatrix& rho_ab, const ExtensionAnsatz& ansatz);

/// f^alpha as a function of W. The regularized value mixes every marginal with
/// eps * maximally mixed before taking entropies, which keeps the gradient finite.
class ExtensionObjective {
 public:
  ExtensionObjective(const Alpha& alpha, const Purification& p, int d_v, int d_f, double regularization = 1e-10);

  double value(const Matrix& w) const;
  /// Regularized value; grad receives dF/dRe(W) + i dF/dIm(W).
  double value_and_gradient(const Matrix& w, Matrix& grad) const;
  /// Unregularized f^alpha of the extension.
  double exact_value(const Matrix& w) const;

 private:
  Matrix extension_vector(const Matrix& w) const;

  Alpha alpha_;
  const Purification& p_;
  int d_v_;
  int d_f_;
  double eps_;
};

struct EstimatorConfig {
  int d_v = 0;  // 0: d_A * d_B
  int d_f = 0;  // 0: d_V * d_E
  int restarts = 8;
  int max_iters = 2000;
  std::uint64_t seed = 0;
  int threads = 1;
  double tolerance = 1e-8;  // best-value change that counts as progress
  int window = 50;          // over this many iterations
  double regularization = 1e-10;
  std::vector<ExtensionAnsatz> warm_starts;
};

struct RestartRecord {
  std::string start;  // "trivial", "purification", "warm", "random"
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct MeasureEstimate {
  Alpha alpha;
  double value = 0.0;
  std::optional<double> lower_bound;
  std::optional<double> gap;
  ExtensionAnsatz witness;
  int d_v = 0;
  int restarts = 0;
  int max_iters = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  int iterations = 0;
  std::vector<RestartRecord> per_restart;
};

/// Minimum over restarts of locally optimized f^alpha. The result is an upper
/// bound on E_alpha restricted to extensions with dim V <= d_v.
MeasureEstimate estimate_measure(const Alpha& alpha, const DensityMatrix& rho_ab, const EstimatorConfig& config = {});
MeasureEstimate estimate_measure(const Alpha& alpha, const Purification& p, const EstimatorConfig& config = {});

/// Certified lower bound: (c/2) I(A:B) for alpha = c * f^{P,Q,R} with c > 0,
/// 0 for positive multiples of the squashed-entanglement functional.
std::optional<double> lower_bound(const Alpha& alpha, const DensityMatrix& rho_ab);

enum class Measure { P, Q, R, Sq };
Measure parse_measure(const std::string& name);
std::string measure_name(Measure m);
Alpha measure_alpha(Measure m);

struct StateFamily {
  enum class Kind { Pure, Classical, Antisymmetric } kind = Kind::Pure;
  double s_a = 0.0;            // Pure: S_A of the state
  std::vector<double> p;       // Classical
  int d = 2;                   // Antisymmetric
};

/// Closed-form value of a measure on a family covered analytically. For
/// (R, antisymmetric) the value is the relation target S_AB/2 + inf_I/2, which
/// needs an estimate of inf I(A:B|V) in `sq_estimate`.
double closed_form(Measure measure, const StateFamily& family, std::optional<double> sq_estimate = std::nullopt);

double shannon_entropy(const std::vector<double>& p);

}  // namespace optcorr
