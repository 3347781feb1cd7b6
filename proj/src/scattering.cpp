#include "qmc/scattering.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace qmc {

namespace {

ComplexMatrix random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

// Phi_alpha(z)(t) for z on the doubled system and t on the standard space,
// given the precomputed injection images A (columns vec(r^a E_ij r^b)) and
// B (columns vec(r^b E_kl r^a)).
Complex phi_functional(const ComplexMatrix& z, const ComplexMatrix& t,
                       const ComplexMatrix& a, const ComplexMatrix& b, int d) {
  ComplexMatrix m = b.adjoint() * t * a;
  Complex sum = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          sum += z(i * d + k, j * d + l) * m(k * d + l, i * d + j);
  return sum;
}

}  // namespace

ComplexMatrix build_isometry(const TensorDilation& dil) {
  const int d = dil.d, c = dil.c;
  State phi = resolve_invariant_state(dil);
  if (!phi.faithful())
    throw MissingInvariantState("isometry needs a faithful invariant state");
  State psi = dil.psi;

  ComplexMatrix rho_inv_sqrt = frac_power(phi.rho(), -0.5);
  ComplexVector omega = kron(gns_vector(phi), gns_vector(psi));
  const FactorShape lifted{d, c, d, c};
  const std::vector<int> to_standard{0, 2, 1, 3};  // [d,c,dbar,cbar] -> [d,dbar,c,cbar]

  ComplexMatrix v(d * d * c * c, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit(i, j) = 1.0;
      ComplexMatrix gamma = dil.embed(unit * rho_inv_sqrt);
      ComplexMatrix op = permute_factors(
          kron(gamma, ComplexMatrix::Identity(d * c, d * c)), lifted,
          to_standard);
      v.col(i * d + j) = op * omega;
    }
  if ((v.adjoint() * v - ComplexMatrix::Identity(d * d, d * d)).norm() > 1e-8)
    throw NotInvariant("v*v != 1; the dilation does not leave phi invariant");
  return v;
}

KrausChannel extended_dual_channel(const TensorDilation& dil) {
  const int d = dil.d, c = dil.c;
  ComplexMatrix v = build_isometry(dil);
  // Row index is m*c^2 + e with m over the standard space and e over the
  // environment pair, so the environment slices are Kraus operators.
  std::vector<ComplexMatrix> kraus(c * c,
                                   ComplexMatrix::Zero(d * d, d * d));
  for (int m = 0; m < d * d; ++m)
    for (int e = 0; e < c * c; ++e)
      kraus[e].row(m) = v.row(m * c * c + e);
  return KrausChannel(std::move(kraus));
}

Superoperator extended_dual(const TensorDilation& dil) {
  if (dil.d > 6)
    throw HorizonTooLarge("superoperator materialization limited to d <= 6");
  return transfer_matrix(extended_dual_channel(dil));
}

int fixed_space_dim(const Superoperator& so) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(so.matrix, false);
  if (es.info() != Eigen::Success) throw Error("eigensolver failed");
  int count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()[i] - 1.0) <= 1e-7) ++count;
  return count;
}

bool is_asymptotically_complete(const TensorDilation& dil) {
  return fixed_space_dim(extended_dual(dil)) == 1;
}

double finite_horizon_defect(const TensorDilation& dil, const ComplexMatrix& x,
                             int n) {
  const int d = dil.d, c = dil.c;
  if (x.rows() != d || x.cols() != d)
    throw DimensionMismatch("observable dimension mismatch");
  double env = std::pow(double(c), double(n));
  if (double(d) * env > 4096.0)
    throw HorizonTooLarge("d * c^n exceeds the horizon guard");

  State phi = resolve_invariant_state(dil);
  const ComplexMatrix id_c = ComplexMatrix::Identity(c, c);

  // z_k lives on [d, c_newest, ..., c_oldest].
  ComplexMatrix z = x;
  int env_dim = 1;
  for (int k = 0; k < n; ++k) {
    // insert the fresh environment factor right after the system factor
    ComplexMatrix lifted = kron(z, id_c);  // [d, env_old, c]
    if (env_dim > 1)
      lifted = permute_factors(lifted, FactorShape{d, env_dim, c}, {0, 2, 1});
    ComplexMatrix u_ext =
        kron(dil.u, ComplexMatrix::Identity(env_dim, env_dim));
    z = u_ext.adjoint() * lifted * u_ext;
    env_dim *= c;
  }

  // conditional expectation (phi (x) Id) and the weighted 2-norm
  ComplexMatrix weight_env = ComplexMatrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) weight_env = kron(dil.psi.rho(), weight_env);
  ComplexMatrix cond = partial_trace(
      kron(phi.rho(), ComplexMatrix::Identity(env_dim, env_dim)) * z,
      FactorShape{d, env_dim}, {1});
  ComplexMatrix w = z - kron(ComplexMatrix::Identity(d, d), cond);
  ComplexMatrix weight = kron(phi.rho(), weight_env);
  double norm_sq = (weight * w.adjoint() * w).trace().real();
  return std::sqrt(std::max(norm_sq, 0.0));
}

double duality_check(const TensorDilation& dil, double alpha, int samples,
                     unsigned seed) {
  if (alpha < 0.0 || alpha > 0.5)
    throw Error("alpha must lie in [0, 1/2]");
  const int d = dil.d;
  State phi = resolve_invariant_state(dil);
  if (!phi.faithful())
    throw MissingInvariantState("duality needs a faithful invariant state");

  ComplexMatrix ra = frac_power(phi.rho(), alpha);
  ComplexMatrix rb = frac_power(phi.rho(), 0.5 - alpha);
  ComplexMatrix a(d * d, d * d), b(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit(i, j) = 1.0;
      a.col(i * d + j) = vec(ra * unit * rb);
      b.col(i * d + j) = vec(rb * unit * ra);
    }

  KrausChannel coupling = diagonal_coupling(dil);
  KrausChannel z_dual = extended_dual_channel(dil);

  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    ComplexMatrix x = random_complex(d, d, rng);
    ComplexMatrix y = random_complex(d, d, rng);
    ComplexMatrix t = random_complex(d * d, d * d, rng);
    x /= x.norm();
    y /= y.norm();
    t /= t.norm();
    ComplexMatrix z = kron(x, y.conjugate());
    Complex lhs = phi_functional(coupling.apply(z), t, a, b, d);
    Complex rhs = phi_functional(z, z_dual.apply(t), a, b, d);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

MixingCertificate certificate(const TensorDilation& dil, int n_max) {
  State phi = resolve_invariant_state(dil);
  if (!phi.faithful())
    throw MissingInvariantState("certificate needs a faithful invariant state");

  KrausChannel coupling = diagonal_coupling(dil);
  ComplexMatrix p_delta = support_projection(phi).matrix();

  MixingCertificate cert{.p_delta_min_eigs = {},
                         .coupling = coupling,
                         .p_delta = p_delta,
                         .iterate = p_delta,
                         .iterate_n = 0};
  ComplexMatrix q = p_delta;
  for (int n = 1; n <= n_max; ++n) {
    q = coupling.apply(q);
    q = 0.5 * (q + q.adjoint());
    const double lam = herm_eig(q).values.minCoeff();
    cert.p_delta_min_eigs.emplace_back(n, lam);
    if (cert.n0 == 0 && lam > 1e-12) {
      cert.n0 = n;
      cert.r = lam;
    }
  }
  cert.iterate = q;
  cert.iterate_n = n_max;
  if (cert.n0 == 0)
    throw NotStrictlyPositive(
        "no iterate is strictly positive within the horizon");

  cert.fix_dim_z = fixed_space_dim(extended_dual(dil));
  cert.fix_dim_coupling = fixed_space_dim(transfer_matrix(coupling));
  cert.complete = cert.fix_dim_z == 1;
  return cert;
}

double certificate_min_eig(MixingCertificate& cert, int n) {
  if (n == 0) return herm_eig(cert.p_delta).values.minCoeff();
  for (const auto& [m, lam] : cert.p_delta_min_eigs)
    if (m == n) return lam;
  if (n < cert.iterate_n)
    throw Error("iterate history was not recorded for this n");
  while (cert.iterate_n < n) {
    cert.iterate = cert.coupling.apply(cert.iterate);
    cert.iterate = 0.5 * (cert.iterate + cert.iterate.adjoint());
    ++cert.iterate_n;
    cert.p_delta_min_eigs.emplace_back(
        cert.iterate_n, herm_eig(cert.iterate).values.minCoeff());
  }
  return cert.p_delta_min_eigs.back().second;
}

MixingBound mixing_bound(MixingCertificate& cert, int n) {
  if (cert.r <= 0.0) throw NotStrictlyPositive("certificate has r <= 0");
  const double lam = certificate_min_eig(cert, n);
  const double direct = 4.0 * std::sqrt(std::max(1.0 - lam, 0.0));
  const double closed =
      4.0 * std::pow(1.0 - cert.r, double(n / cert.n0) / 2.0);
  return MixingBound{direct, closed};
}

}  // namespace qmc
