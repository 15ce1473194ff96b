#ifndef ZSLAB_MATRIX_HPP_
#define ZSLAB_MATRIX_HPP_

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace zslab {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Numerical comparison threshold for identity checks. eps must be positive;
/// the default matches the residuals attainable with double-precision
/// unitaries at desk scale.
struct Tolerance {
  double eps = 1e-9;
};

/// Max entrywise absolute difference; throws DimensionError on shape mismatch.
double max_abs_diff(const CMat& a, const CMat& b);

/// Largest entry magnitude.
double max_abs(const CMat& a);

/// Operator (spectral) norm.
double op_norm(const CMat& a);

bool approx_eq(const CMat& a, const CMat& b, Tolerance tol = {});

bool is_hermitian(const CMat& a, Tolerance tol = {});

/// Hermitian to tolerance with min eigenvalue >= -eps. Throws DimensionError
/// if a is not square.
bool is_positive(const CMat& a, Tolerance tol = {});

/// Smallest eigenvalue of the Hermitian part; the "how negative" diagnostic
/// behind is_positive.
double min_eigenvalue(const CMat& a);

bool all_finite(const CMat& a);

/// Kronecker product with row-major pairing: (kron(a,b))((i*rb+k),(j*cb+l))
/// = a(i,j) b(k,l). Vector overload pairs coordinates the same way.
CMat kron(const CMat& a, const CMat& b);
CVec kron_vec(const CVec& x, const CVec& y);

CMat identity(int n);
CMat zero(int rows, int cols);

/// Unit matrix E_{ij} of the given shape.
CMat unit_matrix(int rows, int cols, int i, int j);

/// Least-squares coordinates of `target` in the span of `basis`
/// (matrices treated as vectors). Returns the coefficient vector and the
/// residual in max-abs terms through `residual` when non-null.
CVec span_coords(const std::vector<CMat>& basis, const CMat& target,
                 double* residual = nullptr);

/// Column-space dimension of the span of the given matrices, at tolerance.
int span_rank(const std::vector<CMat>& mats, double tol = 1e-9);

/// True if target lies in span(basis) with residual <= tol.
bool in_span(const std::vector<CMat>& basis, const CMat& target, double tol);

}  // namespace zslab

#endif  // ZSLAB_MATRIX_HPP_
