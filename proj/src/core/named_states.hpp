#pragma once

// Test-state families on (A, B) and the mini-grammar used to name them.
//
//   bell                       Phi+ on two qubits
//   classical:p1,p2,...        sum_i p_i |ii><ii|
//   antisym:d                  normalized projector onto the antisymmetric subspace of d x d
//   symmetric-random:d,seed    random mixture of symmetric pure states on d x d
//   pure-random:d,seed         Haar-random pure state on d x d
//   mixed-random:dA,dB,seed    induced-measure mixed state on dA x dB
//   local-random:dA,dB,seed    rho_A (x) rho_B with both factors random mixed
//   product:<spec>;<spec>      tensor product of two named states, regrouped as (A1A2)(B1B2)

#include <cstdint>
#include <string>
#include <vector>

#include "core/quantum_state.hpp"

namespace optcorr {

DensityMatrix bell_state();
DensityMatrix classical_state(const std::vector<double>& p);
DensityMatrix antisymmetric_state(int d);
DensityMatrix symmetric_random_state(int d, std::uint64_t seed);
DensityMatrix pure_random_state(int d, std::uint64_t seed);
DensityMatrix mixed_random_state(int d_a, int d_b, std::uint64_t seed);
DensityMatrix local_random_state(int d_a, int d_b, std::uint64_t seed);
/// rho1 on (A,B) and rho2 on (A,B) combined into a state on (A = A1A2, B = B1B2).
DensityMatrix bipartite_product(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Builds a state from the mini-grammar above.
DensityMatrix named_state(const std::string& spec);

/// Extension of classical(p) of the general form sum_ij sqrt(p_i p_j)|ii><jj| (x) rho_V^{ij},
/// with the blocks rho_V^{ij} = Tr_F[|v_i><v_j|] drawn from random orthonormal v_i on V (x) F.
DensityMatrix classical_extension(const std::vector<double>& p, int d_v, std::uint64_t seed);

}  // namespace optcorr
