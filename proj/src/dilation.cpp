#include "qmc/dilation.hpp"

#include <cmath>
#include <limits>

namespace qmc {

namespace {

ComplexMatrix herm_log(const ComplexMatrix& rho) {
  auto eig = herm_eig(rho);
  if (eig.values.minCoeff() <= 0.0)
    throw SingularNegativePower("logarithm of a singular density");
  RealVector logs = eig.values.array().log();
  return eig.vectors * logs.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

}  // namespace

TensorDilation::TensorDilation(int d_, int c_, ComplexMatrix u_, State psi_,
                               std::optional<State> phi_)
    : d(d_), c(c_), u(std::move(u_)), psi(std::move(psi_)), phi(std::move(phi_)) {
  if (d < 1 || c < 1) throw DimensionMismatch("dimensions must be positive");
  if (u.rows() != d * c || u.cols() != d * c)
    throw DimensionMismatch("interaction unitary must be dc x dc");
  if (psi.dim() != c)
    throw DimensionMismatch("environment state dimension mismatch");
  if (phi && phi->dim() != d)
    throw DimensionMismatch("invariant state dimension mismatch");
}

ComplexMatrix TensorDilation::embed(const ComplexMatrix& x) const {
  return u.adjoint() * kron(x, ComplexMatrix::Identity(c, c)) * u;
}

std::vector<ComplexMatrix> environment_slices(const TensorDilation& dil) {
  const int d = dil.d, c = dil.c;
  const ComplexMatrix& f = dil.psi.eigenvectors();
  std::vector<ComplexMatrix> slices(c * c);
  for (int m = 0; m < c; ++m)
    for (int k = 0; k < c; ++k) {
      ComplexMatrix s(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          Complex sum = 0.0;
          for (int a = 0; a < c; ++a)
            for (int b = 0; b < c; ++b)
              sum += std::conj(f(a, m)) * dil.u(i * c + a, j * c + b) * f(b, k);
          s(i, j) = sum;
        }
      slices[m * c + k] = std::move(s);
    }
  return slices;
}

KrausChannel induced_channel(const TensorDilation& dil) {
  const auto slices = environment_slices(dil);
  const auto& mu = dil.psi.eigenvalues();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(dil.c * dil.c);
  for (int m = 0; m < dil.c; ++m)
    for (int k = 0; k < dil.c; ++k)
      kraus.push_back(std::sqrt(mu[k]) * slices[m * dil.c + k]);
  return KrausChannel(std::move(kraus));
}

KrausChannel opposite_channel(const KrausChannel& ch) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(ch.kraus().size());
  for (const auto& k : ch.kraus()) kraus.push_back(k.conjugate());
  return KrausChannel(std::move(kraus));
}

KrausChannel diagonal_coupling(const TensorDilation& dil) {
  const auto slices = environment_slices(dil);
  const auto& mu = dil.psi.eigenvalues();
  const int c = dil.c;
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(c * c);
  for (int m = 0; m < c; ++m)
    for (int n = 0; n < c; ++n) {
      ComplexMatrix w = ComplexMatrix::Zero(dil.d * dil.d, dil.d * dil.d);
      for (int k = 0; k < c; ++k)
        w += std::sqrt(mu[k]) *
             kron(slices[m * c + k], slices[n * c + k].conjugate());
      kraus.push_back(std::move(w));
    }
  return KrausChannel(std::move(kraus));
}

KrausChannel coupling_from_convex(
    const std::vector<std::tuple<double, KrausChannel, KrausChannel>>& parts) {
  if (parts.empty()) throw DimensionMismatch("empty convex combination");
  double total = 0.0;
  for (const auto& [lam, s, t] : parts) {
    if (lam < 0.0) throw Error("convex weights must be nonnegative");
    total += lam;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error("convex weights must sum to one");
  std::vector<ComplexMatrix> kraus;
  for (const auto& [lam, s, t] : parts) {
    for (const auto& a : s.kraus())
      for (const auto& b : t.kraus())
        kraus.push_back(std::sqrt(lam) * kron(a, b.conjugate()));
  }
  return KrausChannel(std::move(kraus));
}

State resolve_invariant_state(const TensorDilation& dil) {
  if (dil.phi) return *dil.phi;
  auto inv = invariant_state(induced_channel(dil));
  if (!inv.state.faithful())
    throw MissingInvariantState(
        "induced channel has no faithful invariant state; modular data "
        "undefined");
  return inv.state;
}

bool ValidationReport::pass() const {
  return unitarity_residual <= 1e-8 && psi_min_eigenvalue > 1e-10 &&
         phi_faithful && invariance_residual <= 1e-8 &&
         generator_residual <= 1e-8;
}

ValidationReport validate(const TensorDilation& dil) {
  ValidationReport rep{};
  const int n = dil.d * dil.c;
  rep.unitarity_residual =
      (dil.u.adjoint() * dil.u - ComplexMatrix::Identity(n, n)).norm();
  rep.psi_min_eigenvalue = dil.psi.eigenvalues().minCoeff();

  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.invariance_residual = nan;
  rep.generator_residual = nan;
  rep.commutant_residual = nan;
  rep.phi_faithful = false;
  if (rep.unitarity_residual > 1e-6 || rep.psi_min_eigenvalue <= 1e-10)
    return rep;  // channel construction is meaningless past this point

  State phi = resolve_invariant_state(dil);
  rep.phi_faithful = phi.faithful();

  KrausChannel t = induced_channel(dil);
  rep.invariance_residual = trace_norm(t.predual(phi.rho()) - phi.rho());

  ComplexMatrix joint = kron(phi.rho(), dil.psi.rho());
  rep.commutant_residual = commutator(dil.u, joint).norm();

  if (rep.phi_faithful && rep.psi_min_eigenvalue > 1e-10) {
    ComplexMatrix log_phi = herm_log(phi.rho());
    ComplexMatrix log_joint = herm_log(joint);
    double worst = 0.0;
    for (int i = 0; i < dil.d; ++i)
      for (int j = 0; j < dil.d; ++j) {
        ComplexMatrix unit = ComplexMatrix::Zero(dil.d, dil.d);
        unit(i, j) = 1.0;
        ComplexMatrix lhs = dil.embed(commutator(log_phi, unit));
        ComplexMatrix rhs = commutator(log_joint, dil.embed(unit));
        worst = std::max(worst, (lhs - rhs).norm());
      }
    rep.generator_residual = worst;
  } else {
    rep.generator_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace qmc
