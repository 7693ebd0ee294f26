#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/entropy_space.hpp"

namespace optcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

struct Subsystem {
  std::string label;
  int dim = 1;

  bool operator==(const Subsystem&) const = default;
};

struct StateTolerance {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double psd = 1e-9;
};

/// Density matrix over labelled subsystems. Basis index order follows the
/// label order with the last label varying fastest.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<Subsystem> subsystems, Matrix matrix, const StateTolerance& tol = {});

  static DensityMatrix from_pure(std::vector<Subsystem> subsystems, const Vector& psi);

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  const Matrix& matrix() const { return matrix_; }
  std::vector<std::string> labels() const;
  std::vector<int> dims() const;
  int total_dim() const { return static_cast<int>(matrix_.rows()); }
  int dim_of(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<Subsystem> subsystems_;
  Matrix matrix_;
};

/// Throws InvalidState naming the first violated property.
void validate_density(const Matrix& m, const StateTolerance& tol = {});

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
/// Reorders subsystems to the given label order.
DensityMatrix permute(const DensityMatrix& rho, const std::vector<std::string>& order);
DensityMatrix relabel(const DensityMatrix& rho, const std::vector<std::string>& labels);
/// Merges consecutive subsystems into one labelled block, e.g. (A1,A2,B1,B2) -> (A,B).
DensityMatrix group(const DensityMatrix& rho, const std::vector<std::pair<std::string, std::vector<std::string>>>& blocks);

/// Entropy in bits; eigenvalues below 1e-12 count as zero.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const Matrix& rho);

/// S_J for every nonempty subset J of the subsystems, indexed by bitmask - 1.
std::vector<double> subset_entropies(const DensityMatrix& rho);

/// (S_A, S_B, S_V, S_AB, S_AV, S_BV, S_ABV) of a state on exactly (A, B, V).
struct EntropyReport {
  std::array<double, kAlphaSlots> s{};
};
EntropyReport entropy_report(const DensityMatrix& rho_abv);

double f_alpha(const Alpha& alpha, const DensityMatrix& rho_abv);
double f_alpha(const Alpha& alpha, const EntropyReport& report);

/// I(X:Y) of a bipartite state on the two named subsystems.
double mutual_information(const DensityMatrix& rho, const std::string& x, const std::string& y);

/// A CPTP map on one labelled subsystem, stored as Kraus operators.
struct LocalChannel {
  std::string label;
  int d_in = 1;
  int d_out = 1;
  std::vector<Matrix> kraus;

  DensityMatrix apply(const DensityMatrix& rho) const;
};

/// Channel from a Haar-random isometry d_in -> d_out * kraus_rank with the
/// rank factor traced out.
LocalChannel random_local_channel(const std::string& label, int d_in, int d_out, int kraus_rank, std::uint64_t seed);

namespace ops {

// Raw-matrix kernels shared with the estimator. `dims` lists subsystem
// dimensions, `keep` is a bitmask over them (bit i = subsystem i).
Matrix partial_trace(const Matrix& rho, std::span<const int> dims, std::uint32_t keep);
// op acting on the kept subsystems, tensored with identity elsewhere.
Matrix embed(const Matrix& op, std::span<const int> dims, std::uint32_t keep);
// Hermitian part (m + m^dagger) / 2.
Matrix hermitian_part(const Matrix& m);

}  // namespace ops

namespace random {

Vector gaussian_vector(int n, Rng& rng);
/// rows x cols isometry (rows >= cols) from the QR factor of a complex
/// Gaussian matrix with the R diagonal made positive.
Matrix haar_isometry(int rows, int cols, Rng& rng);
Vector haar_pure(int dim, Rng& rng);
/// Induced measure: trace out an env_dim-dimensional part of a Haar pure state.
Matrix induced_mixed(int dim, int env_dim, Rng& rng);
/// Random state on the given subsystems, induced measure with env = total dim.
DensityMatrix random_state(const std::vector<Subsystem>& subsystems, std::uint64_t seed);
DensityMatrix random_pure_state(const std::vector<Subsystem>& subsystems, std::uint64_t seed);

}  // namespace random

}  // namespace optcorr
