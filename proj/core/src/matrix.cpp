#include "zslab/matrix.hpp"

#include <cmath>

#include "zslab/errors.hpp"

namespace zslab {

double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shapes " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double max_abs(const CMat& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

double op_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  return a.jacobiSvd().singularValues()(0);
}

bool approx_eq(const CMat& a, const CMat& b, Tolerance tol) {
  return max_abs_diff(a, b) <= tol.eps;
}

bool is_hermitian(const CMat& a, Tolerance tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs_diff(a, CMat(a.adjoint())) <= tol.eps;
}

double min_eigenvalue(const CMat& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("min_eigenvalue: matrix is not square");
  }
  if (a.rows() == 0) return 0.0;
  CMat herm = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_positive(const CMat& a, Tolerance tol) {
  if (a.rows() != a.cols()) {
    throw DimensionError("is_positive: matrix is not square");
  }
  if (!is_hermitian(a, tol)) return false;
  return min_eigenvalue(a) >= -tol.eps;
}

bool all_finite(const CMat& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Complex& z = a(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVec kron_vec(const CVec& x, const CVec& y) {
  CVec out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out.segment(i * y.size(), y.size()) = x(i) * y;
  }
  return out;
}

CMat identity(int n) { return CMat::Identity(n, n); }

CMat zero(int rows, int cols) { return CMat::Zero(rows, cols); }

CMat unit_matrix(int rows, int cols, int i, int j) {
  CMat m = CMat::Zero(rows, cols);
  m(i, j) = 1.0;
  return m;
}

namespace {

CMat stack_vectorized(const std::vector<CMat>& mats) {
  if (mats.empty()) return CMat(0, 0);
  const Eigen::Index n = mats[0].size();
  CMat stacked(n, static_cast<Eigen::Index>(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].size() != n) {
      throw DimensionError("span basis matrices differ in shape");
    }
    stacked.col(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const CVec>(mats[k].data(), n);
  }
  return stacked;
}

}  // namespace

CVec span_coords(const std::vector<CMat>& basis, const CMat& target,
                 double* residual) {
  if (basis.empty()) {
    if (residual) *residual = max_abs(target);
    return CVec(0);
  }
  if (basis[0].rows() != target.rows() || basis[0].cols() != target.cols()) {
    throw DimensionError("span_coords: target shape differs from basis");
  }
  CMat stacked = stack_vectorized(basis);
  CVec rhs = Eigen::Map<const CVec>(target.data(), target.size());
  CVec coeffs = stacked.completeOrthogonalDecomposition().solve(rhs);
  if (residual) {
    *residual = (stacked * coeffs - rhs).cwiseAbs().maxCoeff();
  }
  return coeffs;
}

int span_rank(const std::vector<CMat>& mats, double tol) {
  if (mats.empty()) return 0;
  CMat stacked = stack_vectorized(mats);
  auto cod = stacked.completeOrthogonalDecomposition();
  cod.setThreshold(tol);
  return static_cast<int>(cod.rank());
}

bool in_span(const std::vector<CMat>& basis, const CMat& target, double tol) {
  double res = 0.0;
  span_coords(basis, target, &res);
  return res <= tol;
}

}  // namespace zslab
