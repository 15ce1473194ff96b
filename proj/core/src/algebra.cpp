#include "zslab/algebra.hpp"

#include <utility>

#include "zslab/errors.hpp"

namespace zslab {

MatrixStarAlgebra::MatrixStarAlgebra(std::vector<CMat> basis, CMat unit,
                                     std::string name)
    : basis_(std::move(basis)), unit_(std::move(unit)), name_(std::move(name)) {
  if (basis_.empty()) throw ConstructionError(name_ + ": empty algebra basis");
  ambient_dim_ = static_cast<int>(basis_[0].rows());
  for (const CMat& b : basis_) {
    if (b.rows() != ambient_dim_ || b.cols() != ambient_dim_) {
      throw ConstructionError(name_ + ": basis matrices must be square of one size");
    }
  }
  if (unit_.rows() != ambient_dim_ || unit_.cols() != ambient_dim_) {
    throw ConstructionError(name_ + ": unit shape mismatch");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(basis_.size());
  stacked_.resize(static_cast<Eigen::Index>(ambient_dim_) * ambient_dim_, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    stacked_.col(k) = Eigen::Map<const CVec>(basis_[static_cast<std::size_t>(k)].data(),
                                             stacked_.rows());
  }
  solver_ = stacked_.completeOrthogonalDecomposition();
  if (solver_.rank() != n) {
    throw ConstructionError(name_ + ": basis is linearly dependent");
  }
}

std::optional<CVec> MatrixStarAlgebra::coords(const CMat& a, double tol) const {
  if (a.rows() != ambient_dim_ || a.cols() != ambient_dim_) {
    throw DimensionError(name_ + ": element shape mismatch");
  }
  CVec rhs = Eigen::Map<const CVec>(a.data(), a.size());
  CVec c = solver_.solve(rhs);
  double residual = (stacked_ * c - rhs).cwiseAbs().maxCoeff();
  if (residual > tol) return std::nullopt;
  return c;
}

CMat MatrixStarAlgebra::expand(const CVec& coeffs) const {
  if (coeffs.size() != dim()) {
    throw DimensionError(name_ + ": coefficient count mismatch");
  }
  CMat out = CMat::Zero(ambient_dim_, ambient_dim_);
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    out += coeffs(i) * basis_[static_cast<std::size_t>(i)];
  }
  return out;
}

bool MatrixStarAlgebra::contains(const CMat& a, double tol) const {
  return coords(a, tol).has_value();
}

ViolationReport MatrixStarAlgebra::check_closure(Tolerance tol) const {
  ViolationReport report("algebra-closure");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    report.add_checked();
    if (!all_finite(basis_[i])) {
      report.add_violation("finite", name_ + " basis " + std::to_string(i), 1.0);
    }
    report.add_checked();
    if (!contains(basis_[i].adjoint(), tol.eps)) {
      report.add_violation("adjoint-closure",
                           name_ + " basis " + std::to_string(i) + "*", 1.0);
    }
    report.add_checked(2);
    double lhs = max_abs_diff(unit_ * basis_[i], basis_[i]);
    double rhs = max_abs_diff(basis_[i] * unit_, basis_[i]);
    if (lhs > tol.eps) report.add_violation("unit", "1*b" + std::to_string(i), lhs);
    if (rhs > tol.eps) report.add_violation("unit", "b" + std::to_string(i) + "*1", rhs);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      report.add_checked();
      if (!contains(basis_[i] * basis_[j], tol.eps)) {
        report.add_violation("product-closure",
                             "b" + std::to_string(i) + "*b" + std::to_string(j),
                             1.0);
      }
    }
  }
  report.add_checked();
  if (!contains(unit_, tol.eps)) {
    report.add_violation("unit", name_ + ": 1 outside span", 1.0);
  }
  return report;
}

std::shared_ptr<const MatrixStarAlgebra> MatrixStarAlgebra::scalars() {
  return std::make_shared<MatrixStarAlgebra>(std::vector<CMat>{identity(1)},
                                             identity(1), "C");
}

std::shared_ptr<const MatrixStarAlgebra> MatrixStarAlgebra::full_matrix(int d) {
  std::vector<CMat> basis;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) basis.push_back(unit_matrix(d, d, i, j));
  }
  return std::make_shared<MatrixStarAlgebra>(std::move(basis), identity(d),
                                             "M_" + std::to_string(d));
}

std::shared_ptr<const MatrixStarAlgebra> MatrixStarAlgebra::diagonal(int d) {
  std::vector<CMat> basis;
  for (int i = 0; i < d; ++i) basis.push_back(unit_matrix(d, d, i, i));
  return std::make_shared<MatrixStarAlgebra>(std::move(basis), identity(d),
                                             "C^" + std::to_string(d));
}

CMat apply_algebra_map(const AlgebraMap& f, const MatrixStarAlgebra& source,
                       const CMat& a) {
  auto c = source.coords(a);
  if (!c.has_value()) {
    throw DomainError(source.name() + ": element outside algebra span");
  }
  CMat out = CMat::Zero(f.images[0].rows(), f.images[0].cols());
  for (Eigen::Index i = 0; i < c->size(); ++i) {
    out += (*c)(i)*f.images[static_cast<std::size_t>(i)];
  }
  return out;
}

ViolationReport check_star_homomorphism(const AlgebraMap& f,
                                        const MatrixStarAlgebra& source,
                                        const MatrixStarAlgebra& target,
                                        Tolerance tol) {
  ViolationReport report("star-homomorphism");
  if (f.images.size() != static_cast<std::size_t>(source.dim())) {
    report.add_violation("domain", "image count differs from basis size", 1.0);
    return report;
  }
  for (std::size_t i = 0; i < f.images.size(); ++i) {
    report.add_checked();
    if (!target.contains(f.images[i], tol.eps)) {
      report.add_violation("containment",
                           "f(b" + std::to_string(i) + ") outside target span",
                           1.0);
    }
  }
  const auto& basis = source.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    // f(a*) = f(a)*
    report.add_checked();
    try {
      CMat fa_star = apply_algebra_map(f, source, basis[i].adjoint());
      double res = max_abs_diff(fa_star, CMat(f.images[i].adjoint()));
      if (res > tol.eps) {
        report.add_violation("star", "f(b" + std::to_string(i) + "*)", res);
      }
    } catch (const DomainError&) {
      report.add_violation("containment", "b" + std::to_string(i) + "* outside source span", 1.0);
    }
    for (std::size_t j = 0; j < basis.size(); ++j) {
      // f(ab) = f(a)f(b)
      report.add_checked();
      try {
        CMat lhs = apply_algebra_map(f, source, basis[i] * basis[j]);
        CMat rhs = f.images[i] * f.images[j];
        double mres = max_abs_diff(lhs, rhs);
        if (mres > tol.eps) {
          report.add_violation(
              "multiplicativity",
              "f(b" + std::to_string(i) + " b" + std::to_string(j) + ")", mres);
        }
      } catch (const DomainError&) {
        report.add_violation(
            "containment",
            "b" + std::to_string(i) + "*b" + std::to_string(j) + " outside source span",
            1.0);
      }
    }
  }
  report.add_checked();
  CMat f_unit = apply_algebra_map(f, source, source.unit());
  double ures = max_abs_diff(f_unit, target.unit());
  if (ures > tol.eps) report.add_violation("unital", "f(1) != 1", ures);
  return report;
}

}  // namespace zslab
