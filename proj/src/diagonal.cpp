#include "qmc/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qmc {

namespace {

int coupling_dim(const ComplexMatrix& rho_hat) {
  const int n = static_cast<int>(rho_hat.rows());
  const int d = static_cast<int>(std::llround(std::sqrt(double(n))));
  if (d * d != n || rho_hat.cols() != n)
    throw DimensionMismatch("coupling density must be d^2 x d^2");
  return d;
}

ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    Complex phase = r(i, i) / std::abs(r(i, i));
    q.col(i) *= phase;
  }
  return q;
}

// tr(rho_hat * p) for the maximal diagonal projection of an orthonormal basis.
double basis_overlap(const ComplexMatrix& rho_hat, const ComplexMatrix& basis) {
  double value = 0.0;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    ComplexVector w = kron(basis.col(i), basis.col(i).conjugate());
    value += (w.adjoint() * rho_hat * w)(0, 0).real();
  }
  return value;
}

ComplexMatrix herm_exp_i(const ComplexMatrix& h) {
  auto eig = herm_eig(h);
  ComplexVector phases(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    phases[i] = std::exp(Complex(0.0, eig.values[i]));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

ComplexVector gns_vector(const State& s) {
  return vec(frac_power(s.rho(), 0.5));
}

CouplingState::CouplingState(ComplexMatrix rho_hat)
    : rho_hat_(std::move(rho_hat)),
      marginal_1_(partial_trace(rho_hat_, {coupling_dim(rho_hat_),
                                           coupling_dim(rho_hat_)},
                                {0})),
      marginal_2_(partial_trace(rho_hat_, {coupling_dim(rho_hat_),
                                           coupling_dim(rho_hat_)},
                                {1})
                      .transpose()) {}

CouplingState diagonal_state(const State& s) {
  ComplexVector xi = gns_vector(s);
  return CouplingState(xi * xi.adjoint());
}

CouplingState product_coupling(const State& a, const State& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("product coupling needs equal dimensions");
  return CouplingState(kron(a.rho(), b.rho().conjugate()));
}

DiagonalProjection::DiagonalProjection(ComplexMatrix p, ProjectionKind kind)
    : p_(std::move(p)), kind_(kind) {
  if (!is_diagonal_projection(p_))
    throw NotAProjection("matrix is not a diagonal projection");
}

int DiagonalProjection::dim() const {
  return static_cast<int>(std::llround(std::sqrt(double(p_.rows()))));
}

bool is_diagonal_projection(const ComplexMatrix& p) {
  const int d = coupling_dim(p);
  if ((p * p - p).norm() > 1e-9 || (p - p.adjoint()).norm() > 1e-9)
    throw NotAProjection("matrix is not an orthogonal projection");
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit(i, j) = 1.0;
      ComplexMatrix lhs = p * kron(unit, id) * p;
      ComplexMatrix rhs = p * kron(id, unit.transpose()) * p;
      if ((lhs - rhs).norm() > 1e-9) return false;
    }
  return true;
}

DiagonalProjection support_projection(const State& s) {
  ComplexVector xi = gns_vector(s);
  return DiagonalProjection(xi * xi.adjoint(), ProjectionKind::SupportOfState);
}

DiagonalProjection maximal_diagonal_projection(const ComplexMatrix& basis) {
  const int d = static_cast<int>(basis.rows());
  if (basis.cols() != d)
    throw DimensionMismatch("basis must be a square matrix of columns");
  if ((basis.adjoint() * basis - ComplexMatrix::Identity(d, d)).norm() > 1e-9)
    throw Error("basis columns are not orthonormal");
  ComplexMatrix p = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    ComplexVector w = kron(basis.col(i), basis.col(i).conjugate());
    p += w * w.adjoint();
  }
  return DiagonalProjection(std::move(p), ProjectionKind::MaximalFromBasis);
}

QciBounds qci_bounds_from_overlap(double overlap) {
  const double v = std::clamp(overlap, 0.0, 1.0);
  return QciBounds{4.0 * std::sqrt(1.0 - v),
                   2.0 * (1.0 + std::sqrt(v)) * std::sqrt(1.0 - v)};
}

QciBounds qci_bounds(const CouplingState& c, const DiagonalProjection& p) {
  if (p.matrix().rows() != c.rho_hat().rows())
    throw DimensionMismatch("projection dimension does not match coupling");
  const double v = (c.rho_hat() * p.matrix()).trace().real();
  return qci_bounds_from_overlap(v);
}

OverlapResult optimize_overlap(const CouplingState& c, int resolution,
                               unsigned seed) {
  const int d = c.dim();
  const ComplexMatrix& rho_hat = c.rho_hat();

  if (d == 2) {
    // Exhaustive scan over one-dimensional projections (r, omega).
    double best = -1.0;
    ComplexMatrix best_basis = ComplexMatrix::Identity(2, 2);
    for (int ir = 0; ir <= resolution; ++ir) {
      const double r = double(ir) / double(resolution);
      const double t = 1.0 - r;
      for (int iw = 0; iw < resolution; ++iw) {
        const double w = 2.0 * std::numbers::pi * double(iw) / double(resolution);
        ComplexMatrix basis(2, 2);
        const Complex phase = std::exp(Complex(0.0, w));
        basis.col(0) << std::sqrt(r), phase * std::sqrt(t);
        basis.col(1) << -std::conj(phase) * std::sqrt(t), std::sqrt(r);
        const double value = basis_overlap(rho_hat, basis);
        if (value > best) {
          best = value;
          best_basis = basis;
        }
      }
    }
    return OverlapResult{best, best_basis, true};
  }

  // d > 2: local ascent over unitaries; reported as a lower bound only.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  double best = basis_overlap(rho_hat, ComplexMatrix::Identity(d, d));
  ComplexMatrix best_basis = ComplexMatrix::Identity(d, d);
  for (int start = 0; start < 10; ++start) {
    ComplexMatrix u = start == 0 ? ComplexMatrix::Identity(d, d)
                                 : random_unitary(d, rng);
    double value = basis_overlap(rho_hat, u);
    double step = 0.5;
    for (int it = 0; it < resolution; ++it) {
      ComplexMatrix h(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) h(i, j) = Complex(g(rng), g(rng));
      h = 0.5 * (h + h.adjoint());
      h *= step / std::max(h.norm(), 1e-12);
      ComplexMatrix cand = herm_exp_i(h) * u;
      const double cand_value = basis_overlap(rho_hat, cand);
      if (cand_value > value) {
        value = cand_value;
        u = cand;
      } else {
        step *= 0.97;
      }
    }
    if (value > best) {
      best = value;
      best_basis = u;
    }
  }
  return OverlapResult{best, best_basis, false};
}

bool is_channel_coupling(const KrausChannel& hat, const KrausChannel& base) {
  const int d = base.dim();
  if (hat.dim() != d * d)
    throw DimensionMismatch("coupling channel must act on d^2 dimensions");
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit(i, j) = 1.0;
      ComplexMatrix lhs1 = hat.apply(kron(unit, id));
      ComplexMatrix rhs1 = kron(base.apply(unit), id);
      if ((lhs1 - rhs1).norm() > 1e-9) return false;
      ComplexMatrix lhs2 = hat.apply(kron(id, unit.conjugate()));
      ComplexMatrix rhs2 = kron(id, base.apply(unit).conjugate());
      if ((lhs2 - rhs2).norm() > 1e-9) return false;
    }
  return true;
}

}  // namespace qmc
