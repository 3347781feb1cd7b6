#pragma once

#include <optional>
#include <tuple>

#include "qmc/diagonal.hpp"
#include "qmc/quantum.hpp"

// Tensor dilations T(x) = (Id (x) psi)(u* (x (x) 1) u) and the diagonal
// coupling they induce. Factor ordering is system-major [d, c] throughout.

namespace qmc {

struct TensorDilation {
  int d;             // system dimension
  int c;             // environment dimension
  ComplexMatrix u;   // dc x dc interaction unitary, system-major
  State psi;         // faithful environment state
  std::optional<State> phi;  // invariant system state, if known

  TensorDilation(int d, int c, ComplexMatrix u, State psi,
                 std::optional<State> phi = std::nullopt);

  // Gamma(x) = u* (x (x) 1) u on the dc-dimensional interaction space.
  ComplexMatrix embed(const ComplexMatrix& x) const;
};

struct ValidationReport {
  double unitarity_residual;    // ||u*u - 1||
  double psi_min_eigenvalue;
  double invariance_residual;   // ||predual_T(rho_phi) - rho_phi||_1
  double generator_residual;    // modular commutation via the generator
  double commutant_residual;    // ||[u, rho_phi (x) rho_psi]|| (sufficient only)
  bool phi_faithful;

  bool pass() const;
};

// Residual report; resolves phi from the induced channel when absent and
// throws MissingInvariantState if no faithful invariant state exists.
ValidationReport validate(const TensorDilation& dil);

// The dilation's phi if present, otherwise the invariant state of the
// induced channel.
State resolve_invariant_state(const TensorDilation& dil);

// Kraus form of T(x) = (Id (x) psi)(u*(x (x) 1)u) in a psi-eigenbasis.
KrausChannel induced_channel(const TensorDilation& dil);

// T'(y') = J T(J y' J) J; entrywise conjugation of the Kraus list.
KrausChannel opposite_channel(const KrausChannel& ch);

// The canonical self-coupling of the induced channel: Kraus operators
// W_mn = sum_k sqrt(mu_k) u[m,k] (x) conj(u[n,k]) over a psi-eigenbasis.
KrausChannel diagonal_coupling(const TensorDilation& dil);

// sum_k lambda_k (S_k (x) T_k') as a coupling channel.
KrausChannel coupling_from_convex(
    const std::vector<std::tuple<double, KrausChannel, KrausChannel>>& parts);

// Environment-slice operators u[m,k] = (1 (x) <f_m|) u (1 (x) |f_k>) for the
// eigenbasis f of psi; index m*c + k.
std::vector<ComplexMatrix> environment_slices(const TensorDilation& dil);

}  // namespace qmc
