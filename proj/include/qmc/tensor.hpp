#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qmc/errors.hpp"

// Dense complex linear algebra on tensor-product spaces.
//
// Conventions used throughout the library:
//  - scalar products are linear in the FIRST argument,
//  - vec is row-major: vec(A)[i*cols + j] = A(i,j), so that
//      (x (x) I) vec(A) = vec(x A)   and   (I (x) conj(y)) vec(A) = vec(A y*),
//  - the modular conjugation acts as J vec(A) = vec(A*), hence
//      J x J = I (x) conj(x)   and   J x* J = I (x) transpose(x).

namespace qmc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Ordered factor dimensions of a tensor-product index, outermost first.
struct FactorShape {
  std::vector<int> dims;

  FactorShape() = default;
  FactorShape(std::initializer_list<int> d) : dims(d) {}
  explicit FactorShape(std::vector<int> d) : dims(std::move(d)) {}

  int total() const;
  int factors() const { return static_cast<int>(dims.size()); }
};

// Relative tolerance below which a matrix is accepted as Hermitian.
inline constexpr double kHermTol = 1e-9;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Reorders tensor factors of a vector; factor at new position p is old factor perm[p].
ComplexVector permute_factors(const ComplexVector& v, const FactorShape& shape,
                              const std::vector<int>& perm);

// Conjugates a square matrix by the factor-permutation unitary.
ComplexMatrix permute_factors(const ComplexMatrix& m, const FactorShape& shape,
                              const std::vector<int>& perm);

// Traces out every factor not listed in `keep`; kept factors stay in their order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const FactorShape& shape,
                            const std::vector<int>& keep);

struct HermEig {
  RealVector values;       // ascending
  ComplexMatrix vectors;   // orthonormal columns
};

// Eigendecomposition of a Hermitian matrix; throws NotHermitian beyond kHermTol.
HermEig herm_eig(const ComplexMatrix& m);

// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

// rho^alpha for PSD rho; alpha = 0 yields the range projection,
// negative powers require a strictly positive matrix.
ComplexMatrix frac_power(const ComplexMatrix& rho, double alpha);

ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v);  // square reshape
ComplexMatrix unvec(const ComplexVector& v, int rows, int cols);

// Antilinear modular conjugation on vec'd matrices: J vec(A) = vec(A*).
ComplexVector modular_conjugation(const ComplexVector& v);

}  // namespace qmc
