#pragma once
// Built-in model families, measurements and the shipped verification
// scenarios.

#include <cstdint>
#include <vector>

#include "qpred/risk.hpp"

namespace qpred {

// Qubit states 0.5 (I + r (cos t X + sin t Y)) depolarized toward I/2 with
// weight `depolarize`, on a uniform angular grid over [0, 2 pi).
ParametricModel equatorial_family(int grid_size, double bloch_radius, double depolarize,
                                  int n_copies, int m_copies, int max_dim = kDefaultMaxDim);

// Commuting family diag(p, 1 - p) with p on a uniform grid over
// [p_min, p_max].
ParametricModel diagonal_family(int grid_size, double p_min, double p_max,
                                int n_copies, int m_copies, int max_dim = kDefaultMaxDim);

// Computational-basis projectors on n copies of a d-level system; outcome
// labels are the base-d digit strings in composite-index order.
Povm z_product_povm(int dim, int n_copies);

// The four Bell-basis projectors on two qubits, labels phi+/phi-/psi+/psi-.
Povm bell_povm();

// The default set every shipped scenario is certified against.
std::vector<double> default_alphas();

// Shipped scenarios.  s1: eight equatorial qubit states, two copies measured
// in the product z basis, one-copy prediction.  diag: five commuting diagonal
// states, informative z-basis data.  bell: the s1 family measured in the
// entangled Bell basis.
Scenario scenario_s1();
Scenario scenario_diagonal();
Scenario scenario_bell();

}  // namespace qpred
