#include <doctest.h>

#include <cmath>

#include "qmc/models.hpp"
#include "qmc/scattering.hpp"
#include "test_helpers.hpp"

using namespace qmc;
using namespace qmc::testing;

TEST_CASE("build_isometry yields an isometry intertwining the dilation") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    TensorDilation dil = random_modular_dilation(2 + trial % 2, rng);
    ComplexMatrix v = build_isometry(dil);
    const int dd = dil.d * dil.d;
    CHECK((v.adjoint() * v - ComplexMatrix::Identity(dd, dd)).norm() < 1e-9);
  }
}

TEST_CASE("build_isometry rejects non-invariant phi") {
  std::mt19937_64 rng(42);
  ComplexMatrix u = random_unitary(4, rng);
  // claim a generic phi that the channel does not preserve
  TensorDilation dil(2, 2, u, State::maximally_mixed(2),
                     State(random_density(2, rng)));
  CHECK_THROWS_AS(build_isometry(dil), NotInvariant);
}

TEST_CASE("extended dual is a unital completely positive channel") {
  TensorDilation dil = models::three_level_dilation();
  KrausChannel z = extended_dual_channel(dil);
  CHECK(z.dim() == 9);
  CHECK((z.apply(ComplexMatrix::Identity(9, 9)) -
         ComplexMatrix::Identity(9, 9))
            .norm() < 1e-9);
  CHECK(is_completely_positive(extended_dual(dil)));
}

TEST_CASE("fixed space dimensions detect completeness") {
  CHECK(fixed_space_dim(extended_dual(models::three_level_dilation())) == 1);
  CHECK(is_asymptotically_complete(models::three_level_dilation()));

  TensorDilation id_dil = models::identity_dilation(2, 2);
  CHECK(fixed_space_dim(extended_dual(id_dil)) > 1);
  CHECK_FALSE(is_asymptotically_complete(id_dil));
}

TEST_CASE("finite-horizon defect decays for the complete model") {
  TensorDilation dil = models::three_level_dilation();
  ComplexMatrix x = ComplexMatrix::Zero(3, 3);
  x(0, 0) = 1.0;
  double prev = finite_horizon_defect(dil, x, 0);
  CHECK(prev > 1e-3);
  for (int n : {2, 4, 6}) {
    double cur = finite_horizon_defect(dil, x, n);
    CHECK(cur < prev + 1e-12);
    prev = cur;
  }
  // decay is slow (r is small): after six steps roughly 30% is gone
  CHECK(prev < 0.75 * finite_horizon_defect(dil, x, 0));

  // the identity dilation never absorbs anything
  TensorDilation id_dil = models::identity_dilation(2, 2);
  ComplexMatrix y = ComplexMatrix::Zero(2, 2);
  y(0, 1) = 1.0;
  CHECK(finite_horizon_defect(id_dil, y, 5) ==
        doctest::Approx(finite_horizon_defect(id_dil, y, 1)));

  CHECK_THROWS_AS(finite_horizon_defect(dil, x, 12), HorizonTooLarge);
}

TEST_CASE("duality holds for the model and random modular dilations") {
  TensorDilation dil = models::three_level_dilation();
  for (double alpha : {0.0, 0.25, 0.5})
    CHECK(duality_check(dil, alpha, 20, 0) < 1e-9);

  std::mt19937_64 rng(43);
  TensorDilation rnd = random_modular_dilation(2, rng);
  CHECK(duality_check(rnd, 0.25, 10, 0) < 1e-9);

  CHECK_THROWS_AS(duality_check(dil, 0.7, 5, 0), Error);
}

TEST_CASE("certificate reproduces the model constants") {
  MixingCertificate cert = certificate(models::three_level_dilation(), 4);
  CHECK(cert.n0 == 2);
  CHECK(std::abs(cert.r - models::ref_r()) < 1e-10);
  CHECK(cert.complete);
  CHECK(cert.fix_dim_z == 1);
  CHECK(cert.fix_dim_coupling == 1);
}

TEST_CASE("certificate is withheld for the identity dilation") {
  CHECK_THROWS_AS(certificate(models::identity_dilation(2, 2), 6),
                  NotStrictlyPositive);
}

TEST_CASE("iterates dominate the projection and grow monotonely") {
  TensorDilation dil = models::three_level_dilation();
  MixingCertificate cert = certificate(dil, 8);
  // T(p) - p is PSD when phi is invariant
  ComplexMatrix gain = cert.coupling.apply(cert.p_delta) - cert.p_delta;
  CHECK(herm_eig(ComplexMatrix(0.5 * (gain + gain.adjoint())))
            .values.minCoeff() > -1e-9);
  // lambda_min increases in n
  double prev = -1.0;
  for (const auto& [n, lam] : cert.p_delta_min_eigs) {
    CHECK(lam >= prev - 1e-12);
    prev = lam;
  }
}

TEST_CASE("mixing bounds: direct below closed form, extension on demand") {
  MixingCertificate cert = certificate(models::three_level_dilation(), 4);
  for (int n = 2; n <= 12; n += 2) {
    MixingBound b = mixing_bound(cert, n);
    CHECK(b.direct <= b.closed_form + 1e-9);
  }
  // closed form at even n equals 4 (1-r)^{n/4}
  MixingBound b8 = mixing_bound(cert, 8);
  CHECK(b8.closed_form ==
        doctest::Approx(4.0 * std::pow(1.0 - cert.r, 2.0)));
}

TEST_CASE("predual iterates of the coupling absorb into the diagonal state") {
  TensorDilation dil = models::three_level_dilation();
  KrausChannel coup = diagonal_coupling(dil);
  State phi = *dil.phi;
  ComplexVector xi = gns_vector(phi);
  ComplexMatrix target = xi * xi.adjoint();

  std::mt19937_64 rng(44);
  ComplexMatrix rho = random_density(9, rng);
  const double start = trace_norm(rho - target);
  for (int n = 0; n < 200; ++n) rho = coup.predual(rho);
  CHECK(trace_norm(rho - target) < 1e-3);
  CHECK(trace_norm(rho - target) < start);
}

TEST_CASE("extremality: the 16 Kraus products are linearly independent") {
  auto ref = models::reference_coupling_kraus();
  ComplexMatrix coeff(16, 81);
  int row = 0;
  for (const auto& ti : ref)
    for (const auto& tj : ref)
      coeff.row(row++) = vec(ComplexMatrix(ti.adjoint() * tj)).transpose();
  Eigen::JacobiSVD<ComplexMatrix> svd(coeff);
  CHECK(svd.rank() == 16);
}
