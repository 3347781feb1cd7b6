#pragma once

#include <vector>

#include "qmc/tensor.hpp"

namespace qmc {

// Density matrix with cached spectral decomposition (descending eigenvalues,
// tiny negatives clamped to zero). Trace must be 1 within 1e-10.
class State {
 public:
  explicit State(ComplexMatrix rho);

  const ComplexMatrix& rho() const { return rho_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  bool faithful() const { return faithful_; }

  static State diagonal(const RealVector& weights);
  static State maximally_mixed(int d);
  static State pure(const ComplexVector& unit_vector);

 private:
  ComplexMatrix rho_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
  bool faithful_ = false;
};

// Heisenberg-picture channel T(x) = sum_i K_i* x K_i; construction enforces
// unitality sum_i K_i* K_i = 1 within 1e-9.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> kraus);

  int dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  // Schroedinger action sum_i K_i rho K_i*.
  ComplexMatrix predual(const ComplexMatrix& rho) const;

  static KrausChannel identity(int d);
  static KrausChannel unitary_conjugation(const ComplexMatrix& u);

 private:
  int dim_;
  std::vector<ComplexMatrix> kraus_;
};

// Matrix of a linear map on B(C^dim) in the row-major vec basis.
struct Superoperator {
  ComplexMatrix matrix;  // dim^2 x dim^2
  int dim = 0;

  ComplexMatrix apply(const ComplexMatrix& x) const;
};

Superoperator transfer_matrix(const KrausChannel& ch);
Superoperator predual_transfer_matrix(const KrausChannel& ch);

// Superoperator of an arbitrary map given by a callable on matrix units.
template <typename F>
Superoperator superoperator_of(int dim, F&& map) {
  Superoperator so;
  so.dim = dim;
  so.matrix.resize(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(dim, dim);
      unit(i, j) = 1.0;
      so.matrix.col(i * dim + j) = vec(map(unit));
    }
  return so;
}

ComplexMatrix choi_matrix(const Superoperator& so);
bool is_completely_positive(const Superoperator& so);

struct InvariantState {
  State state;
  bool unique;  // false when the fixed space of the predual has dimension > 1
};

// Fixed density of a unital channel, from the eigenvalue-1 spectral projection
// of the predual transfer matrix.
InvariantState invariant_state(const KrausChannel& ch);

// Largest eigenvalue modulus after removing one eigenvalue closest to 1.
double subdominant_modulus(const ComplexMatrix& map_matrix);
double subdominant_modulus(const Superoperator& so);

// Trace-norm distance of the densities.
double state_distance(const State& a, const State& b);

}  // namespace qmc
