#pragma once

#include "qmc/quantum.hpp"

// Diagonal states and projections on B(H) (x) B(H)' = B(H (x) conj(H)),
// coupling predicates, and the coupling-inequality evaluators. The commutant
// copy is realized by entrywise conjugation, so the second marginal of a
// coupling density is the transpose of the stored state.

namespace qmc {

// Canonical purification vec(rho^{1/2}); equals sum_i sqrt(lambda_i) e_i (x) conj(e_i).
ComplexVector gns_vector(const State& s);

// Density on (C^d) (x) (C^d) whose marginals are a state and the opposite of
// another: tr_2(rho_hat) = rho_1 and tr_1(rho_hat) = transpose(rho_2).
class CouplingState {
 public:
  explicit CouplingState(ComplexMatrix rho_hat);

  const ComplexMatrix& rho_hat() const { return rho_hat_; }
  const State& marginal_1() const { return marginal_1_; }
  const State& marginal_2() const { return marginal_2_; }
  int dim() const { return marginal_1_.dim(); }

 private:
  ComplexMatrix rho_hat_;
  State marginal_1_;
  State marginal_2_;
};

// Vector state of the GNS vector; the unique coupling concentrated "on the diagonal".
CouplingState diagonal_state(const State& s);

// rho_a (x) conj(rho_b): the product coupling of a and the opposite of b.
CouplingState product_coupling(const State& a, const State& b);

enum class ProjectionKind { SupportOfState, MaximalFromBasis, Custom };

// Orthogonal projection p with p(x (x) 1)p = p(1 (x) x^T)p for all x.
class DiagonalProjection {
 public:
  DiagonalProjection(ComplexMatrix p, ProjectionKind kind);

  const ComplexMatrix& matrix() const { return p_; }
  ProjectionKind kind() const { return kind_; }
  int dim() const;  // underlying d, with p acting on d^2

 private:
  ComplexMatrix p_;
  ProjectionKind kind_;
};

bool is_diagonal_projection(const ComplexMatrix& p);

// Rank-one projection onto the GNS vector of s.
DiagonalProjection support_projection(const State& s);

// sum_i |e_i (x) conj(e_i)><e_i (x) conj(e_i)| for orthonormal columns e_i.
DiagonalProjection maximal_diagonal_projection(const ComplexMatrix& basis);

struct QciBounds {
  double bound4;   // 4 (1 - v)^{1/2}
  double refined;  // 2 (1 + v^{1/2}) (1 - v)^{1/2}
};

QciBounds qci_bounds_from_overlap(double overlap);
QciBounds qci_bounds(const CouplingState& c, const DiagonalProjection& p);

struct OverlapResult {
  double best;
  ComplexMatrix basis;
  bool global;  // exhaustive scan (d == 2); heuristic lower bound otherwise
};

// Maximizes tr(rho_hat * p) over maximal diagonal projections. For d = 2 a
// parametric grid scan over one-dimensional projections; for d > 2 local
// ascent over random unitary starts.
OverlapResult optimize_overlap(const CouplingState& c, int resolution,
                               unsigned seed = 0);

// True iff `hat` restricts to `base` on M (x) 1 and to the opposite of `base`
// on 1 (x) M'.
bool is_channel_coupling(const KrausChannel& hat, const KrausChannel& base);

}  // namespace qmc
