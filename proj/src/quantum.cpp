#include "qmc/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qmc {

State::State(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
    throw DimensionMismatch("density matrix must be square");
  auto eig = herm_eig(rho_);  // throws NotHermitian when badly non-Hermitian
  rho_ = 0.5 * (rho_ + rho_.adjoint());
  if (std::abs(rho_.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho_.trace().imag()) > 1e-10)
    throw NotPsd("density matrix must have unit trace");
  const int d = dim();
  eigenvalues_.resize(d);
  eigenvectors_.resize(d, d);
  for (int i = 0; i < d; ++i) {
    double lam = eig.values[d - 1 - i];  // descending
    if (lam < -1e-10) throw NotPsd("density matrix has a negative eigenvalue");
    eigenvalues_[i] = std::max(lam, 0.0);
    eigenvectors_.col(i) = eig.vectors.col(d - 1 - i);
  }
  faithful_ = eigenvalues_[d - 1] > 1e-10;
}

State State::diagonal(const RealVector& weights) {
  ComplexMatrix rho = ComplexMatrix::Zero(weights.size(), weights.size());
  for (Eigen::Index i = 0; i < weights.size(); ++i) rho(i, i) = weights[i];
  return State(rho);
}

State State::maximally_mixed(int d) {
  return State(ComplexMatrix::Identity(d, d) / double(d));
}

State State::pure(const ComplexVector& v) {
  return State(v * v.adjoint() / v.squaredNorm());
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionMismatch("empty Kraus list");
  dim_ = static_cast<int>(kraus_.front().rows());
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_ || k.cols() != dim_)
      throw DimensionMismatch("Kraus operators must be square with equal dims");
    sum += k.adjoint() * k;
  }
  if ((sum - ComplexMatrix::Identity(dim_, dim_)).norm() > 1e-9)
    throw NotUnital("Kraus operators do not sum to the identity");
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_)
    throw DimensionMismatch("argument dimension does not match channel");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) out += k.adjoint() * x * k;
  return out;
}

ComplexMatrix KrausChannel::predual(const ComplexMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_)
    throw DimensionMismatch("argument dimension does not match channel");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

KrausChannel KrausChannel::identity(int d) {
  return KrausChannel({ComplexMatrix::Identity(d, d)});
}

KrausChannel KrausChannel::unitary_conjugation(const ComplexMatrix& u) {
  return KrausChannel({u});
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim || x.cols() != dim)
    throw DimensionMismatch("argument dimension does not match superoperator");
  return unvec(matrix * vec(x));
}

Superoperator transfer_matrix(const KrausChannel& ch) {
  return superoperator_of(ch.dim(),
                          [&](const ComplexMatrix& x) { return ch.apply(x); });
}

Superoperator predual_transfer_matrix(const KrausChannel& ch) {
  return superoperator_of(ch.dim(),
                          [&](const ComplexMatrix& x) { return ch.predual(x); });
}

ComplexMatrix choi_matrix(const Superoperator& so) {
  const int d = so.dim;
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit(i, j) = 1.0;
      ComplexMatrix img = so.apply(unit);
      choi.block(i * d, j * d, d, d) = img;
    }
  return choi;
}

bool is_completely_positive(const Superoperator& so) {
  ComplexMatrix choi = choi_matrix(so);
  const double scale = std::max(choi.norm(), 1.0);
  if ((choi - choi.adjoint()).norm() > 1e-9 * scale) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (choi + choi.adjoint()));
  return es.eigenvalues().minCoeff() >= -1e-9 * scale;
}

InvariantState invariant_state(const KrausChannel& ch) {
  const int d = ch.dim();
  Superoperator pre = predual_transfer_matrix(ch);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(pre.matrix);
  if (es.info() != Eigen::Success) throw Error("eigensolver failed");

  const auto& vals = es.eigenvalues();
  int closest = 0;
  int near_one = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals[i] - 1.0) < std::abs(vals[closest] - 1.0)) closest = int(i);
    if (std::abs(vals[i] - 1.0) <= 1e-6) ++near_one;
  }
  if (std::abs(vals[closest] - 1.0) > 1e-6)
    throw NoFixedPoint("no eigenvalue of the predual transfer matrix near 1");

  // Spectral projection onto the eigenvalue-1 group applied to I/d; this is a
  // fixed point and, the predual being positive and trace preserving, a state.
  ComplexMatrix v = es.eigenvectors();
  ComplexMatrix sel = ComplexMatrix::Zero(vals.size(), vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (std::abs(vals[i] - 1.0) <= 1e-6) sel(i, i) = 1.0;
  ComplexMatrix proj = v * sel * v.partialPivLu().solve(
                                     ComplexMatrix::Identity(d * d, d * d));
  ComplexVector fixed =
      proj * vec(ComplexMatrix::Identity(d, d) / double(d));

  ComplexMatrix rho = unvec(fixed);
  rho = 0.5 * (rho + rho.adjoint());
  double tr = rho.trace().real();
  if (std::abs(tr) < 1e-8) {
    // Degenerate direction with vanishing trace; fall back to the eigenvector.
    rho = unvec(es.eigenvectors().col(closest));
    rho = 0.5 * (rho + rho.adjoint());
    tr = rho.trace().real();
    if (std::abs(tr) < 1e-8)
      throw NoFixedPoint("fixed space contains no trace-class direction");
  }
  rho /= tr;
  // Clamp roundoff negatives.
  auto eig = herm_eig(rho);
  RealVector clamped = eig.values.cwiseMax(0.0);
  rho = eig.vectors * clamped.asDiagonal() * eig.vectors.adjoint();
  rho /= rho.trace().real();

  if (trace_norm(ch.predual(rho) - rho) > 1e-9)
    throw NoFixedPoint("candidate fixed density fails the residual check");
  return InvariantState{State(rho), near_one <= 1};
}

double subdominant_modulus(const ComplexMatrix& map_matrix) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(map_matrix, false);
  if (es.info() != Eigen::Success) throw Error("eigensolver failed");
  const auto& vals = es.eigenvalues();
  int closest = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (std::abs(vals[i] - 1.0) < std::abs(vals[closest] - 1.0)) closest = int(i);
  double best = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (i != closest) best = std::max(best, std::abs(vals[i]));
  return best;
}

double subdominant_modulus(const Superoperator& so) {
  return subdominant_modulus(so.matrix);
}

double state_distance(const State& a, const State& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("states live on different dimensions");
  return trace_norm(a.rho() - b.rho());
}

}  // namespace qmc
