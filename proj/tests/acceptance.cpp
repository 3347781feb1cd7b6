// Acceptance harness: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "qmc/models.hpp"
#include "qmc/scattering.hpp"
#include "test_helpers.hpp"

using namespace qmc;
using namespace qmc::testing;

namespace {

int failures = 0;

void report(int id, const char* what, bool ok) {
  std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, what);
  if (!ok) ++failures;
}

ComplexMatrix phase_fix(ComplexMatrix m) {
  Eigen::Index r = 0, c = 0;
  m.cwiseAbs().maxCoeff(&r, &c);
  return ComplexMatrix(m * std::conj(m(r, c)) / std::abs(m(r, c)));
}

}  // namespace

int main() {
  TensorDilation dil = models::three_level_dilation();
  KrausChannel coup = diagonal_coupling(dil);

  // 1. Kraus reproduction
  {
    auto ref = models::reference_coupling_kraus();
    KrausChannel ref_ch(std::vector<ComplexMatrix>(ref.begin(), ref.end()));
    bool ok = (transfer_matrix(coup).matrix - transfer_matrix(ref_ch).matrix)
                  .cwiseAbs()
                  .maxCoeff() <= 1e-10;
    for (const auto& w : coup.kraus()) {
      double best = 1e9;
      for (const auto& t : ref)
        best =
            std::min(best, (phase_fix(w) - phase_fix(t)).cwiseAbs().maxCoeff());
      ok = ok && best <= 1e-10;
    }
    report(1, "diagonal coupling reproduces the displayed Kraus operators", ok);
  }

  // 2. constant r
  MixingCertificate cert = certificate(dil, 4);
  report(2, "certificate has n0 = 2 and the closed-form r",
         cert.n0 == 2 && std::abs(cert.r - models::ref_r()) <= 1e-10);

  // 3. block values of the second iterate
  {
    ComplexMatrix q = coup.apply(coup.apply(cert.p_delta));
    q = 0.5 * (q + q.adjoint());
    bool ok =
        std::abs(q(models::kBlock2Index, models::kBlock2Index).real() -
                 models::ref_p2_scalar()) <= 1e-10;
    RealMatrix p1 = models::ref_p1_block();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        ok = ok && std::abs(q(models::kBlock1Indices[a],
                              models::kBlock1Indices[b]) -
                            Complex(p1(a, b))) <= 1e-10;
    RealMatrix p0 = models::ref_p0_block();
    bool hermitian = true;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const Complex computed =
            q(models::kBlock0Indices[a], models::kBlock0Indices[b]);
        hermitian = hermitian &&
                    std::abs(computed - std::conj(q(models::kBlock0Indices[b],
                                                    models::kBlock0Indices[a]))) <=
                        1e-10;
        if ((a == 1 && b == 2) || (a == 2 && b == 1)) continue;
        ok = ok && std::abs(computed - Complex(p0(a, b))) <= 1e-10;
      }
    // the displayed (2,3)/(3,2) signs conflict; the computed Hermitian value
    // decides between them
    const double resolved =
        q(models::kBlock0Indices[1], models::kBlock0Indices[2]).real();
    const bool plus = std::abs(resolved - p0(2, 1)) <= 1e-10;
    const bool minus = std::abs(resolved - p0(1, 2)) <= 1e-10;
    ok = ok && hermitian && (plus || minus);
    report(3, "second-iterate blocks match the displayed values", ok);
    std::printf("      block0 (2,3)/(3,2) pair resolved to sign %s "
                "(value %.12e)\n",
                plus ? "+" : (minus ? "-" : "?"), resolved);
  }

  // 4. completeness verdicts
  {
    bool ok = cert.fix_dim_z == 1 && cert.fix_dim_coupling == 1;
    TensorDilation id_dil = models::identity_dilation(2, 2);
    ok = ok && fixed_space_dim(extended_dual(id_dil)) > 1 &&
         fixed_space_dim(transfer_matrix(diagonal_coupling(id_dil))) > 1;
    bool withheld = false;
    try {
      certificate(id_dil, 6);
    } catch (const NotStrictlyPositive&) {
      withheld = true;
    }
    report(4, "fixed-space dimensions decide completeness", ok && withheld);
  }

  // 5. duality
  {
    bool ok = true;
    for (double alpha : {0.0, 0.25, 0.5})
      ok = ok && duality_check(dil, alpha, 20, 0) <= 1e-9;
    report(5, "interpolated duality residual below 1e-9", ok);
  }

  // 6. uniform absorption
  {
    State phi = *dil.phi;
    ComplexVector xi = gns_vector(phi);
    ComplexMatrix target = xi * xi.adjoint();

    MixingCertificate c6 = certificate(dil, 4);
    int n_pred = c6.n0;
    while (mixing_bound(c6, n_pred).closed_form >= 1e-3) n_pred += 2;

    std::mt19937_64 rng(60);
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
      ComplexMatrix rho = random_density(9, rng);
      for (int n = 1; n <= n_pred; ++n) {
        rho = coup.predual(rho);
        if (n % 2 == 0) {
          const double dist = trace_norm(rho - target);
          const double bound = mixing_bound(c6, n).direct;
          if (dist > bound + 1e-9) ok = false;
        }
      }
      if (trace_norm(rho - target) >= 1e-3) ok = false;
    }
    report(6, "predual iterates absorb within the predicted horizon", ok);
  }

  // 7. spectral constants
  {
    const double classical =
        subdominant_modulus(stochastic_matrix(models::three_state_road())
                                .cast<Complex>());
    const double quantum =
        subdominant_modulus(transfer_matrix(induced_channel(dil)));
    bool ok = std::abs(classical - models::ref_classical_rate()) <= 1e-12 &&
              std::abs(quantum - models::ref_quantum_subdominant()) <= 1e-10;
    report(7, "subdominant moduli match their closed forms", ok);
    std::printf("      quantum subdominant %.12e uses the verified closed "
                "form; the displayed %.12e is not an eigenvalue\n",
                quantum, models::ref_quantum_subdominant_displayed());
  }

  // 8. classical exactness
  {
    RoadColoring rc = models::three_state_road();
    bool ok = std::abs(nonsync_probability(rc, 2) - 31.0 / 36.0) <= 1e-12 &&
              std::abs(nonsync_probability(rc, 3) - 25.0 / 36.0) <= 1e-12;
    for (int n = 0; n <= 10; ++n)
      ok = ok && std::abs(nonsync_probability(rc, n) -
                          nonsync_enumeration_oracle(rc, n)) <= 1e-12;
    for (int n = 0; n <= 12; ++n)
      ok = ok && std::abs(alternating_sum_bound(n).binomial_sum -
                          nonsync_probability(rc, n)) <= 1e-12;
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 20; ++trial) {
      RoadColoring rnd = random_road(3, 3, rng);
      for (int n = 0; n <= 10; ++n)
        ok = ok && std::abs(nonsync_probability(rnd, n) -
                            nonsync_enumeration_oracle(rnd, n)) <= 1e-12;
    }
    report(8, "nonsync probabilities are exact against enumeration", ok);
  }

  // 9. classical bound
  {
    RoadColoring rc = models::three_state_road();
    RealMatrix t = stochastic_matrix(rc);
    RealMatrix power = RealMatrix::Identity(3, 3);
    const double rate = models::ref_classical_rate();
    bool ok = true;
    for (int n = 0; n <= 20; ++n) {
      double worst = 0.0;
      for (int s = 0; s < 3; ++s)
        for (int s2 = 0; s2 < 3; ++s2)
          worst = std::max(worst,
                           (power.row(s) - power.row(s2)).cwiseAbs().sum());
      ok = ok && worst <= classical_mixing_bound(rc, n) + 1e-12;
      ok = ok && worst <= 4.0 * std::pow(rate, double(n)) + 1e-12;
      power = power * t;
    }
    report(9, "coupling bounds dominate the measured classical distances", ok);
    std::printf("      binomial sum vs 2*rate^n (informational):\n");
    for (int n = 2; n <= 10; ++n) {
      const AlternatingSumBound b = alternating_sum_bound(n);
      std::printf("      n=%2d  sum=%.12e  2*rate^n=%.12e  %s\n", n,
                  b.binomial_sum, b.closed_form,
                  b.binomial_sum <= b.closed_form ? "dominated" : "exceeds");
    }
  }

  // 10. coupling-inequality property suite
  {
    std::mt19937_64 rng(62);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      const int d = 2 + (trial % 2);
      CouplingState c(random_density(d * d, rng));
      const double dist = state_distance(c.marginal_1(), c.marginal_2());
      for (int k = 0; k < 3; ++k) {
        QciBounds b =
            qci_bounds(c, maximal_diagonal_projection(random_unitary(d, rng)));
        ok = ok && dist <= b.refined + 1e-9 && b.refined <= b.bound4 + 1e-9;
      }
    }
    // two-dimensional tightness example
    ComplexMatrix rho_phi = ComplexMatrix::Zero(2, 2);
    rho_phi(0, 0) = 1.0;
    ComplexVector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    State phi2(rho_phi), psi2 = State::pure(plus);
    ok = ok && std::abs(state_distance(phi2, psi2) - std::sqrt(2.0)) <= 1e-12;
    CouplingState prod = product_coupling(phi2, psi2);
    ok = ok && std::abs(optimize_overlap(prod, 4000, 0).best - 0.75) <= 1e-4;
    QciBounds tight = qci_bounds_from_overlap(0.75);
    ok = ok && std::abs(tight.refined - (1.0 + std::sqrt(3.0) / 2.0)) <= 1e-12;
    report(10, "coupling inequality dominates sampled couplings", ok);
  }

  // 11. structural property suites
  {
    std::mt19937_64 rng(63);
    bool ok = true;

    // coupling marginal invariants
    for (int trial = 0; trial < 10; ++trial) {
      const int d = 2 + (trial % 2);
      State a = random_state(d, rng), b = random_state(d, rng);
      CouplingState c = product_coupling(a, b);
      ok = ok && (c.marginal_1().rho() - a.rho()).norm() < 1e-10 &&
           (c.marginal_2().rho() - b.rho()).norm() < 1e-10;
      CouplingState diag = diagonal_state(a);
      ok = ok && (diag.marginal_1().rho() - a.rho()).norm() < 1e-10 &&
           (diag.marginal_2().rho() - a.rho()).norm() < 1e-10;
    }

    // diagonal-projection predicate on supports and basis projections
    for (int trial = 0; trial < 10; ++trial) {
      const int d = 2 + (trial % 3);
      ok = ok &&
           is_diagonal_projection(
               support_projection(random_state(d, rng)).matrix()) &&
           is_diagonal_projection(
               maximal_diagonal_projection(random_unitary(d, rng)).matrix());
    }
    ok = ok && !is_diagonal_projection(ComplexMatrix::Identity(4, 4));

    // diagonal-state invariance for modular-commuting dilations
    for (int trial = 0; trial < 8; ++trial) {
      TensorDilation rnd = random_modular_dilation(2 + trial % 3, rng);
      ComplexVector xi = gns_vector(*rnd.phi);
      ComplexMatrix proj = xi * xi.adjoint();
      KrausChannel rc = diagonal_coupling(rnd);
      ok = ok && (rc.predual(proj) - proj).norm() < 1e-9;
      ok = ok && is_channel_coupling(rc, induced_channel(rnd));
    }

    // monotone smallest eigenvalue along the iteration
    MixingCertificate mono = certificate(dil, 10);
    double prev = -1.0;
    for (const auto& [n, lam] : mono.p_delta_min_eigs) {
      ok = ok && lam >= prev - 1e-12;
      prev = lam;
    }
    ComplexMatrix gain = coup.apply(mono.p_delta) - mono.p_delta;
    ok = ok && herm_eig(ComplexMatrix(0.5 * (gain + gain.adjoint())))
                       .values.minCoeff() >= -1e-9;

    // extremality: the 16 Kraus products span a 16-dimensional space
    auto ref = models::reference_coupling_kraus();
    ComplexMatrix coeff(16, 81);
    int row = 0;
    for (const auto& ti : ref)
      for (const auto& tj : ref)
        coeff.row(row++) = vec(ComplexMatrix(ti.adjoint() * tj)).transpose();
    Eigen::JacobiSVD<ComplexMatrix> svd(coeff);
    ok = ok && svd.rank() == 16;

    report(11, "structural property suites hold at stated tolerances", ok);
  }

  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
  return failures == 0 ? 0 : 1;
}
