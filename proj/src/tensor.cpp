#include "qmc/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace qmc {

namespace {

void check_shape(const FactorShape& shape, int n) {
  if (shape.total() != n)
    throw DimensionMismatch("factor shape does not match matrix dimension");
}

// Decomposes a flat index into factor indices, outermost factor first.
std::vector<int> split_index(int idx, const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (int p = static_cast<int>(dims.size()) - 1; p >= 0; --p) {
    out[p] = idx % dims[p];
    idx /= dims[p];
  }
  return out;
}

int flatten_index(const std::vector<int>& multi, const std::vector<int>& dims) {
  int idx = 0;
  for (std::size_t p = 0; p < dims.size(); ++p) idx = idx * dims[p] + multi[p];
  return idx;
}

// Maps old flat index -> new flat index under the factor permutation.
std::vector<int> permutation_index_map(const FactorShape& shape,
                                       const std::vector<int>& perm) {
  const int k = shape.factors();
  if (static_cast<int>(perm.size()) != k)
    throw DimensionMismatch("permutation length does not match factor count");
  std::vector<bool> seen(k, false);
  for (int p : perm) {
    if (p < 0 || p >= k || seen[p])
      throw DimensionMismatch("permutation is not a bijection on factors");
    seen[p] = true;
  }
  std::vector<int> new_dims(k);
  for (int p = 0; p < k; ++p) new_dims[p] = shape.dims[perm[p]];

  const int n = shape.total();
  std::vector<int> map(n);
  std::vector<int> multi_new(k);
  for (int i = 0; i < n; ++i) {
    auto multi = split_index(i, shape.dims);
    for (int p = 0; p < k; ++p) multi_new[p] = multi[perm[p]];
    map[i] = flatten_index(multi_new, new_dims);
  }
  return map;
}

}  // namespace

int FactorShape::total() const {
  int n = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionMismatch("factor dimensions must be positive");
    n *= d;
  }
  return n;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector permute_factors(const ComplexVector& v, const FactorShape& shape,
                              const std::vector<int>& perm) {
  check_shape(shape, static_cast<int>(v.size()));
  const auto map = permutation_index_map(shape, perm);
  ComplexVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[map[i]] = v[i];
  return out;
}

ComplexMatrix permute_factors(const ComplexMatrix& m, const FactorShape& shape,
                              const std::vector<int>& perm) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("permute_factors expects a square matrix");
  check_shape(shape, static_cast<int>(m.rows()));
  const auto map = permutation_index_map(shape, perm);
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(map[i], map[j]) = m(i, j);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const FactorShape& shape,
                            const std::vector<int>& keep) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("partial_trace expects a square matrix");
  check_shape(shape, static_cast<int>(m.rows()));
  const int k = shape.factors();
  std::vector<bool> kept(k, false);
  for (int p : keep) {
    if (p < 0 || p >= k || kept[p])
      throw DimensionMismatch("invalid keep set");
    kept[p] = true;
  }
  std::vector<int> keep_dims, trace_dims;
  std::vector<int> keep_pos, trace_pos;
  for (int p = 0; p < k; ++p) {
    if (kept[p]) {
      keep_dims.push_back(shape.dims[p]);
      keep_pos.push_back(p);
    } else {
      trace_dims.push_back(shape.dims[p]);
      trace_pos.push_back(p);
    }
  }
  int nk = 1;
  for (int d : keep_dims) nk *= d;
  int nt = 1;
  for (int d : trace_dims) nt *= d;

  ComplexMatrix out = ComplexMatrix::Zero(nk, nk);
  for (int r = 0; r < nk; ++r) {
    auto rk = split_index(r, keep_dims);
    for (int c = 0; c < nk; ++c) {
      auto ck = split_index(c, keep_dims);
      Complex sum = 0.0;
      for (int t = 0; t < nt; ++t) {
        auto tt = split_index(t, trace_dims);
        std::vector<int> row(k), col(k);
        for (std::size_t p = 0; p < keep_pos.size(); ++p) {
          row[keep_pos[p]] = rk[p];
          col[keep_pos[p]] = ck[p];
        }
        for (std::size_t p = 0; p < trace_pos.size(); ++p) {
          row[trace_pos[p]] = tt[p];
          col[trace_pos[p]] = tt[p];
        }
        sum += m(flatten_index(row, shape.dims), flatten_index(col, shape.dims));
      }
      out(r, c) = sum;
    }
  }
  return out;
}

HermEig herm_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("herm_eig expects a square matrix");
  const double scale = m.norm();
  if ((m - m.adjoint()).norm() > kHermTol * std::max(scale, 1e-300))
    throw NotHermitian("matrix is not Hermitian within tolerance");
  ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  if (es.info() != Eigen::Success)
    throw Error("Hermitian eigendecomposition failed");
  return HermEig{es.eigenvalues(), es.eigenvectors()};
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("trace_norm expects a square matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix frac_power(const ComplexMatrix& rho, double alpha) {
  auto eig = herm_eig(rho);
  const double scale = std::max(eig.values.cwiseAbs().maxCoeff(), 1e-300);
  RealVector powered(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double lam = eig.values[i];
    if (lam < -1e-10 * scale) throw NotPsd("matrix has a negative eigenvalue");
    if (lam < 0) lam = 0;
    if (alpha == 0.0) {
      powered[i] = lam > 1e-12 * scale ? 1.0 : 0.0;
    } else if (alpha < 0.0) {
      if (lam <= 1e-12 * scale)
        throw SingularNegativePower("negative power of a singular matrix");
      powered[i] = std::pow(lam, alpha);
    } else {
      powered[i] = std::pow(lam, alpha);
    }
  }
  return eig.vectors * powered.asDiagonal() * eig.vectors.adjoint();
}

ComplexVector vec(const ComplexMatrix& a) {
  ComplexVector out(a.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out[k++] = a(i, j);
  return out;
}

ComplexMatrix unvec(const ComplexVector& v, int rows, int cols) {
  if (static_cast<Eigen::Index>(rows) * cols != v.size())
    throw DimensionMismatch("unvec shape does not match vector length");
  ComplexMatrix out(rows, cols);
  Eigen::Index k = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = v[k++];
  return out;
}

ComplexMatrix unvec(const ComplexVector& v) {
  const auto n = v.size();
  const int d = static_cast<int>(std::llround(std::sqrt(double(n))));
  if (static_cast<Eigen::Index>(d) * d != n)
    throw DimensionMismatch("unvec of non-square length requires explicit shape");
  return unvec(v, d, d);
}

ComplexVector modular_conjugation(const ComplexVector& v) {
  return vec(unvec(v).adjoint());
}

}  // namespace qmc
