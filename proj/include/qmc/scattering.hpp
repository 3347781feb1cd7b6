#pragma once

#include "qmc/dilation.hpp"

// Scattering analysis of a tensor dilation: the isometry v with
// v x xi_phi = Gamma(x)(xi_phi (x) xi_psi), the extended dual transition
// operator Z'(t) = v*(t (x) 1)v, completeness verdicts, and mixing bounds
// from iterates of the diagonal coupling.

namespace qmc {

// The d^2 c^2 x d^2 isometry; requires a faithful invariant state and throws
// NotInvariant when v*v deviates from the identity.
ComplexMatrix build_isometry(const TensorDilation& dil);

// Z' in Kraus form on the d^2-dimensional standard space; the environment
// slices of v give the Kraus operators.
KrausChannel extended_dual_channel(const TensorDilation& dil);

// Materialized d^4 x d^4 matrix of Z' (dimensions d <= 6 only).
Superoperator extended_dual(const TensorDilation& dil);

// Dimension of the eigenvalue-1 eigenspace, counted within 1e-7.
int fixed_space_dim(const Superoperator& so);

bool is_asymptotically_complete(const TensorDilation& dil);

// || alpha^n(x (x) 1) - (phi (x) Id)(alpha^n(x (x) 1)) || in the
// (phi (x) psi^n)-induced 2-norm, by explicit n-fold embedding.
double finite_horizon_defect(const TensorDilation& dil, const ComplexMatrix& x,
                             int n);

// Max residual of the duality Phi_a(coupling(z)) = Phi_a(z) o Z' over random
// (x, y, t) triples.
double duality_check(const TensorDilation& dil, double alpha, int samples,
                     unsigned seed = 0);

struct MixingCertificate {
  int n0 = 0;    // first n with lambda_min(T^n(p_delta)) > 1e-12
  double r = 0;  // lambda_min at n0
  std::vector<std::pair<int, double>> p_delta_min_eigs;
  bool complete = false;
  int fix_dim_z = 0;
  int fix_dim_coupling = 0;

  // iteration state so bounds past n_max can be extended on demand
  KrausChannel coupling;
  ComplexMatrix p_delta;
  ComplexMatrix iterate;
  int iterate_n = 0;
};

// Iterates the diagonal coupling on the support projection of the invariant
// diagonal state; throws NotStrictlyPositive if no iterate up to n_max is
// strictly positive.
MixingCertificate certificate(const TensorDilation& dil, int n_max);

struct MixingBound {
  double direct;       // 4 (1 - lambda_min(T^n(p_delta)))^{1/2}
  double closed_form;  // 4 (1 - r)^{floor(n/n0)/2}
};

MixingBound mixing_bound(MixingCertificate& cert, int n);

// lambda_min of the n-th iterate, extending the cached sequence if needed.
double certificate_min_eig(MixingCertificate& cert, int n);

}  // namespace qmc
