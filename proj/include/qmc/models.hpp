#pragma once

#include <array>

#include "qmc/classical.hpp"
#include "qmc/dilation.hpp"

// Bundled reference models: a three-state road-colored chain and the
// three-level system coupled to a two-level environment that extends it,
// together with the published constants both reproduce.

namespace qmc::models {

// Lowering shift on C^3 (e1 -> e2 -> e3 -> 0).
ComplexMatrix shift_op();
// Diagonal interaction amplitudes of the three-level model.
ComplexMatrix amp_minus();  // diag(1, 1/sqrt2, 1/sqrt2)
ComplexMatrix amp_plus();   // diag(1/sqrt2, 1/sqrt2, 1)

// d = 3, c = 2 dilation with psi = diag(1/3, 2/3) and invariant state
// phi = diag(4/7, 2/7, 1/7); interaction unitary stored system-major.
TensorDilation three_level_dilation();

// Trivial dilation with u = 1 (never mixes).
TensorDilation identity_dilation(int d, int c);

// Three-state, three-color automaton inducing the same classical chain as the
// diagonal restriction of the three-level model.
RoadColoring three_state_road();

// Published Kraus operators of the diagonal coupling of the three-level model.
std::array<ComplexMatrix, 4> reference_coupling_kraus();

// Published constants.
double ref_r();                     // smallest eigenvalue of the 2nd iterate
double ref_p2_scalar();             // 11/84 - 5 sqrt2/63
RealMatrix ref_p1_block();          // 2x2 block on span{e1e2, e2e3}
RealMatrix ref_p0_block();          // 3x3 block as displayed (sign-ambiguous pair)
// Exact subdominant eigenvalue of the induced channel,
// 1/4 + sqrt2/4 + sqrt(11 - 2 sqrt2)/12 (double), verified symbolically.
double ref_quantum_subdominant();
// The value displayed alongside the model, 1/12 + sqrt2/3 + sqrt5/12 = 0.741;
// it does not lie in the channel's spectrum (erratum; kept for the report).
double ref_quantum_subdominant_displayed();
double ref_classical_rate();        // 1/2 + sqrt2/6

// Flat indices (row-major pair basis) of the block subspaces.
inline constexpr std::array<int, 3> kBlock0Indices{0, 4, 8};   // e_i (x) e_i
inline constexpr std::array<int, 2> kBlock1Indices{1, 5};      // e1e2, e2e3
inline constexpr int kBlock2Index = 2;                         // e1e3

}  // namespace qmc::models
