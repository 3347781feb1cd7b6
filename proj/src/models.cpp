#include "qmc/models.hpp"

#include <cmath>

namespace qmc::models {

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt5 = std::sqrt(5.0);
const double kSqrt6 = std::sqrt(6.0);
}  // namespace

ComplexMatrix shift_op() {
  ComplexMatrix s = ComplexMatrix::Zero(3, 3);
  s(1, 0) = 1.0;
  s(2, 1) = 1.0;
  return s;
}

ComplexMatrix amp_minus() {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = kSqrt2 / 2.0;
  a(2, 2) = kSqrt2 / 2.0;
  return a;
}

ComplexMatrix amp_plus() {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(0, 0) = kSqrt2 / 2.0;
  a(1, 1) = kSqrt2 / 2.0;
  a(2, 2) = 1.0;
  return a;
}

TensorDilation three_level_dilation() {
  const ComplexMatrix s = shift_op();
  const ComplexMatrix a = amp_minus();
  const ComplexMatrix ap = amp_plus();
  const Complex ic(0.0, 1.0);

  // Block form over the environment factor (environment-major layout):
  //   [ a+           i/sqrt2 s* ]
  //   [ i/sqrt2 s    a          ]
  ComplexMatrix u_env(6, 6);
  u_env.block(0, 0, 3, 3) = ap;
  u_env.block(0, 3, 3, 3) = ic * (kSqrt2 / 2.0) * s.adjoint();
  u_env.block(3, 0, 3, 3) = ic * (kSqrt2 / 2.0) * s;
  u_env.block(3, 3, 3, 3) = a;

  ComplexMatrix u = permute_factors(u_env, FactorShape{2, 3}, {1, 0});

  RealVector psi_w(2);
  psi_w << 1.0 / 3.0, 2.0 / 3.0;
  RealVector phi_w(3);
  phi_w << 4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0;
  return TensorDilation(3, 2, std::move(u), State::diagonal(psi_w),
                        State::diagonal(phi_w));
}

TensorDilation identity_dilation(int d, int c) {
  return TensorDilation(d, c, ComplexMatrix::Identity(d * c, d * c),
                        State::maximally_mixed(c), State::maximally_mixed(d));
}

RoadColoring three_state_road() {
  // r: s1,s2 -> s1, s3 -> s2; g: every state loops; b: walk toward s3.
  return RoadColoring({"s1", "s2", "s3"}, {"r", "g", "b"},
                      {{0, 0, 1}, {0, 1, 2}, {1, 2, 2}},
                      {1.0 / 3.0, 1.0 / 2.0, 1.0 / 6.0});
}

std::array<ComplexMatrix, 4> reference_coupling_kraus() {
  const ComplexMatrix s = shift_op();
  const ComplexMatrix sa = s.adjoint();
  const ComplexMatrix a = amp_minus();
  const ComplexMatrix ap = amp_plus();
  return {
      (kSqrt3 / 3.0) * kron(ap, ap) + (kSqrt6 / 6.0) * kron(sa, sa),
      (kSqrt6 / 6.0) * kron(s, ap) - (kSqrt3 / 3.0) * kron(a, sa),
      (kSqrt6 / 6.0) * kron(ap, s) - (kSqrt3 / 3.0) * kron(sa, a),
      (kSqrt3 / 6.0) * kron(s, s) + (kSqrt6 / 3.0) * kron(a, a),
  };
}

double ref_r() {
  return (569.0 - 268.0 * kSqrt2 - 9.0 * std::sqrt(625.0 - 216.0 * kSqrt2)) /
         2016.0;
}

double ref_p2_scalar() { return 11.0 / 84.0 - 5.0 * kSqrt2 / 63.0; }

RealMatrix ref_p1_block() {
  RealMatrix m(2, 2);
  m << 379.0 - 152.0 * kSqrt2, 54.0 - 9.0 * kSqrt2,  //
      54.0 - 9.0 * kSqrt2, 190.0 - 116.0 * kSqrt2;
  return m / 1008.0;
}

RealMatrix ref_p0_block() {
  RealMatrix m(3, 3);
  m << 717.0 - 16.0 * kSqrt2, 52.0 + 189.0 * kSqrt2, 204.0 - 20.0 * kSqrt2,
      52.0 + 189.0 * kSqrt2, 483.0 - 80.0 * kSqrt2, 56.0 - 147.0 * kSqrt2,
      204.0 - 20.0 * kSqrt2, 56.0 + 147.0 * kSqrt2, 306.0 - 16.0 * kSqrt2;
  return m / 1008.0;
}

double ref_quantum_subdominant() {
  return 0.25 + kSqrt2 / 4.0 + std::sqrt(11.0 - 2.0 * kSqrt2) / 12.0;
}

double ref_quantum_subdominant_displayed() {
  return 1.0 / 12.0 + kSqrt2 / 3.0 + kSqrt5 / 12.0;
}

double ref_classical_rate() { return 0.5 + kSqrt2 / 6.0; }

}  // namespace qmc::models
