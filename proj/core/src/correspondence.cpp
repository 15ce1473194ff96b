#include "zslab/correspondence.hpp"

#include <utility>

#include "zslab/errors.hpp"

namespace zslab {

Correspondence::Correspondence(std::shared_ptr<const MatrixStarAlgebra> coeff,
                               std::vector<std::vector<CMat>> inner_tensor,
                               std::vector<CMat> left_of_basis,
                               std::vector<CMat> right_of_basis)
    : coeff_(std::move(coeff)),
      inner_(std::move(inner_tensor)),
      left_(std::move(left_of_basis)),
      right_(std::move(right_of_basis)) {
  dim_ = static_cast<int>(inner_.size());
  if (dim_ == 0) throw ConstructionError("correspondence fiber is empty");
  const int d = coeff_->ambient_dim();
  for (const auto& row : inner_) {
    if (static_cast<int>(row.size()) != dim_) {
      throw ConstructionError("inner product tensor is not square");
    }
    for (const CMat& g : row) {
      if (g.rows() != d || g.cols() != d) {
        throw ConstructionError("inner product values must be ambient-sized");
      }
    }
  }
  if (static_cast<int>(left_.size()) != coeff_->dim() ||
      static_cast<int>(right_.size()) != coeff_->dim()) {
    throw ConstructionError("action tables must cover the coefficient basis");
  }
  for (const CMat& m : left_) {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw ConstructionError("left action matrices must be dim x dim");
    }
  }
  for (const CMat& m : right_) {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw ConstructionError("right action matrices must be dim x dim");
    }
  }
}

const CMat& Correspondence::inner_basis(int i, int j) const {
  return inner_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

CMat Correspondence::inner(const CVec& x, const CVec& y) const {
  if (x.size() != dim_ || y.size() != dim_) {
    throw DimensionError("inner: vector size mismatch");
  }
  const int d = coeff_->ambient_dim();
  CMat out = CMat::Zero(d, d);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == Complex(0, 0)) continue;
    for (int j = 0; j < dim_; ++j) {
      out += std::conj(x(i)) * y(j) * inner_basis(i, j);
    }
  }
  return out;
}

namespace {

CMat combine(const std::vector<CMat>& mats, const CVec& coeffs) {
  CMat out = CMat::Zero(mats[0].rows(), mats[0].cols());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    out += coeffs(i) * mats[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace

CMat Correspondence::left_matrix(const CMat& a) const {
  auto c = coeff_->coords(a);
  if (!c.has_value()) {
    throw DomainError("left action: element outside coefficient span");
  }
  return combine(left_, *c);
}

CMat Correspondence::right_matrix(const CMat& a) const {
  auto c = coeff_->coords(a);
  if (!c.has_value()) {
    throw DomainError("right action: element outside coefficient span");
  }
  return combine(right_, *c);
}

CVec Correspondence::left_apply(const CMat& a, const CVec& x) const {
  return left_matrix(a) * x;
}

CVec Correspondence::right_apply(const CVec& x, const CMat& a) const {
  return right_matrix(a) * x;
}

CMat Correspondence::rank_one(const CVec& x, const CVec& y) const {
  if (x.size() != dim_ || y.size() != dim_) {
    throw DimensionError("rank_one: vector size mismatch");
  }
  CMat out(dim_, dim_);
  for (int k = 0; k < dim_; ++k) {
    CVec ek = CVec::Zero(dim_);
    ek(k) = 1.0;
    out.col(k) = right_apply(x, inner(y, ek));
  }
  return out;
}

Correspondence::CompactSpan Correspondence::compact_span(double tol) const {
  CompactSpan out;
  for (int i = 0; i < dim_; ++i) {
    CVec ei = CVec::Zero(dim_);
    ei(i) = 1.0;
    for (int j = 0; j < dim_; ++j) {
      CVec ej = CVec::Zero(dim_);
      ej(j) = 1.0;
      out.basis.push_back(rank_one(ei, ej));
    }
  }
  out.compact_dim = span_rank(out.basis, tol);

  // The adjointable operators form a linear subspace: T is adjointable iff
  // the right-hand side of the defining linear system stays inside the range
  // of the coefficient map s -> (sum_k s_{ki} G_{kj})_{ij}.
  const int d = coeff_->ambient_dim();
  const Eigen::Index rows =
      static_cast<Eigen::Index>(dim_) * dim_ * d * d;
  CMat lhs = CMat::Zero(rows, static_cast<Eigen::Index>(dim_) * dim_);
  auto eq_offset = [&](int i, int j) {
    return (static_cast<Eigen::Index>(i) * dim_ + j) * d * d;
  };
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) {
        // unknown s_{ki} at column k*dim_+i
        lhs.block(eq_offset(i, j), static_cast<Eigen::Index>(k) * dim_ + i,
                  static_cast<Eigen::Index>(d) * d, 1) +=
            Eigen::Map<const CVec>(inner_basis(k, j).data(),
                                   static_cast<Eigen::Index>(d) * d);
      }
    }
  }
  auto cod = lhs.completeOrthogonalDecomposition();
  cod.setThreshold(tol);
  // rhs(T) for T = E_{uv}: <e_i, T e_j> = delta_{jv} G_{iu}.
  CMat q = CMat::Zero(rows, static_cast<Eigen::Index>(dim_) * dim_);
  for (int u = 0; u < dim_; ++u) {
    for (int v = 0; v < dim_; ++v) {
      CVec rhs = CVec::Zero(rows);
      for (int i = 0; i < dim_; ++i) {
        rhs.segment(eq_offset(i, v), static_cast<Eigen::Index>(d) * d) =
            Eigen::Map<const CVec>(inner_basis(i, u).data(),
                                   static_cast<Eigen::Index>(d) * d);
      }
      // Component of rhs orthogonal to range(lhs).
      CVec sol = cod.solve(rhs);
      q.col(static_cast<Eigen::Index>(u) * dim_ + v) = rhs - lhs * sol;
    }
  }
  auto qcod = q.completeOrthogonalDecomposition();
  qcod.setThreshold(tol);
  out.adjointable_dim = dim_ * dim_ - static_cast<int>(qcod.rank());

  // Compacts lie inside the adjointables; equality is a rank comparison
  // plus adjointability of each rank-one generator.
  bool all_adjointable = true;
  for (const CMat& t : out.basis) {
    if (!module_adjoint(t, tol).has_value()) {
      all_adjointable = false;
      break;
    }
  }
  out.equals_adjointable =
      all_adjointable && out.compact_dim == out.adjointable_dim;
  return out;
}

std::optional<CMat> Correspondence::module_adjoint(const CMat& t,
                                                   double tol) const {
  if (t.rows() != dim_ || t.cols() != dim_) {
    throw DimensionError("module_adjoint: operator size mismatch");
  }
  const int d = coeff_->ambient_dim();
  const Eigen::Index rows = static_cast<Eigen::Index>(dim_) * dim_ * d * d;
  CMat lhs = CMat::Zero(rows, static_cast<Eigen::Index>(dim_) * dim_);
  CVec rhs = CVec::Zero(rows);
  Eigen::Index row = 0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      // sum_k s_{ki} <e_k, e_j> = <e_i, T e_j>, with s = conj(T*).
      for (int k = 0; k < dim_; ++k) {
        lhs.block(row, static_cast<Eigen::Index>(k) * dim_ + i,
                  static_cast<Eigen::Index>(d) * d, 1) +=
            Eigen::Map<const CVec>(inner_basis(k, j).data(),
                                   static_cast<Eigen::Index>(d) * d);
      }
      CVec ej = CVec::Zero(dim_);
      ej(j) = 1.0;
      CVec ei = CVec::Zero(dim_);
      ei(i) = 1.0;
      CMat val = inner(ei, t * ej);
      rhs.segment(row, static_cast<Eigen::Index>(d) * d) =
          Eigen::Map<const CVec>(val.data(), static_cast<Eigen::Index>(d) * d);
      row += static_cast<Eigen::Index>(d) * d;
    }
  }
  CVec s = lhs.completeOrthogonalDecomposition().solve(rhs);
  if ((lhs * s - rhs).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  CMat adj(dim_, dim_);
  for (int k = 0; k < dim_; ++k) {
    for (int i = 0; i < dim_; ++i) {
      adj(k, i) = std::conj(s(static_cast<Eigen::Index>(k) * dim_ + i));
    }
  }
  return adj;
}

CMat Correspondence::gram() const {
  const int d = coeff_->ambient_dim();
  CMat g(static_cast<Eigen::Index>(dim_) * d, static_cast<Eigen::Index>(dim_) * d);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      g.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d,
              d, d) = inner_basis(i, j);
    }
  }
  return g;
}

double Correspondence::module_norm(const CMat& t) const {
  const int d = coeff_->ambient_dim();
  CMat w = gram();
  Eigen::SelfAdjointEigenSolver<CMat> es((w + CMat(w.adjoint())) / 2.0);
  CVec evals = es.eigenvalues().cast<Complex>();
  const double floor = 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff());
  CMat sqrt_w = CMat::Zero(w.rows(), w.cols());
  CMat pinv_sqrt_w = CMat::Zero(w.rows(), w.cols());
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    double lam = std::max(0.0, evals(k).real());
    if (lam <= floor) continue;
    CVec v = es.eigenvectors().col(k);
    sqrt_w += std::sqrt(lam) * (v * v.adjoint());
    pinv_sqrt_w += (1.0 / std::sqrt(lam)) * (v * v.adjoint());
  }
  CMat local = sqrt_w * kron(t, identity(d)) * pinv_sqrt_w;
  return op_norm(local);
}

ViolationReport validate_correspondence(const Correspondence& x,
                                        Tolerance tol) {
  ViolationReport report("correspondence");
  const MatrixStarAlgebra& a = x.coeff();
  const int m = x.dim();
  auto basis_vec = [m](int i) {
    CVec v = CVec::Zero(m);
    v(i) = 1.0;
    return v;
  };

  // Structure tensors are finite and inner values lie in the algebra.
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      report.add_checked();
      if (!all_finite(x.inner_basis(i, j))) {
        report.add_violation("finite", "<e" + std::to_string(i) + ",e" +
                                           std::to_string(j) + ">",
                             1.0);
      }
      report.add_checked();
      if (!a.contains(x.inner_basis(i, j), tol.eps)) {
        report.add_violation("inner-range", "<e" + std::to_string(i) + ",e" +
                                                std::to_string(j) +
                                                "> outside coefficient span",
                             1.0);
      }
    }
  }

  // *-symmetry: <x,y>* = <y,x>.
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      report.add_checked();
      double res = max_abs_diff(CMat(x.inner_basis(i, j).adjoint()),
                                x.inner_basis(j, i));
      if (res > tol.eps) {
        report.add_violation("star-symmetry",
                             "(" + std::to_string(i) + "," + std::to_string(j) +
                                 ")",
                             res);
      }
    }
  }

  // Right module: <x, y.b> = <x,y> b   and (y.b).c = y.(bc), y.1 = y.
  for (int k = 0; k < a.dim(); ++k) {
    const CMat& b = a.basis()[static_cast<std::size_t>(k)];
    CMat rb = x.right_matrix(b);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        report.add_checked();
        CMat lhs = x.inner(basis_vec(i), rb * basis_vec(j));
        CMat rhs = x.inner_basis(i, j) * b;
        double res = max_abs_diff(lhs, rhs);
        if (res > tol.eps) {
          report.add_violation("right-linearity",
                               "<e" + std::to_string(i) + ", e" +
                                   std::to_string(j) + ".b" + std::to_string(k) +
                                   ">",
                               res);
        }
      }
    }
    for (int l = 0; l < a.dim(); ++l) {
      const CMat& c = a.basis()[static_cast<std::size_t>(l)];
      report.add_checked();
      double res = max_abs_diff(CMat(x.right_matrix(c) * rb),
                                x.right_matrix(CMat(b * c)));
      if (res > tol.eps) {
        report.add_violation("right-action",
                             "b" + std::to_string(k) + "b" + std::to_string(l),
                             res);
      }
    }
  }
  report.add_checked();
  double unit_res = max_abs_diff(x.right_matrix(a.unit()), identity(m));
  if (unit_res > tol.eps) {
    report.add_violation("right-action", "x.1 != x", unit_res);
  }

  // Gram positivity in the ambient representation, plus definiteness of the
  // scalarized Gram form (a genuine norm needs <x,x> = 0 => x = 0).
  report.add_checked();
  CMat g = x.gram();
  if (!is_positive(g, tol)) {
    report.add_violation("positivity", "Gram block matrix", -min_eigenvalue(g));
  }
  CMat trace_gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      trace_gram(i, j) = x.inner_basis(i, j).trace();
    }
  }
  report.add_checked();
  double lam_min = min_eigenvalue(trace_gram);
  if (lam_min <= tol.eps) {
    report.add_violation("definiteness",
                         "scalarized Gram min eigenvalue " +
                             std::to_string(lam_min),
                         std::abs(lam_min));
  }

  // phi is a unital *-homomorphism by adjointable operators.
  report.add_checked();
  double ess = max_abs_diff(x.left_matrix(a.unit()), identity(m));
  if (ess > tol.eps) {
    report.add_violation("essential", "phi(1) != id", ess);
  }
  for (int k = 0; k < a.dim(); ++k) {
    const CMat& b = a.basis()[static_cast<std::size_t>(k)];
    CMat phib = x.left_matrix(b);
    for (int l = 0; l < a.dim(); ++l) {
      const CMat& c = a.basis()[static_cast<std::size_t>(l)];
      report.add_checked();
      double res =
          max_abs_diff(CMat(phib * x.left_matrix(c)), x.left_matrix(CMat(b * c)));
      if (res > tol.eps) {
        report.add_violation("phi-multiplicative",
                             "b" + std::to_string(k) + "b" + std::to_string(l),
                             res);
      }
    }
    report.add_checked();
    auto adj = x.module_adjoint(phib, tol.eps);
    if (!adj.has_value()) {
      report.add_violation("phi-adjointable", "b" + std::to_string(k), 1.0);
    } else {
      double res = max_abs_diff(*adj, x.left_matrix(CMat(b.adjoint())));
      if (res > tol.eps) {
        report.add_violation("phi-star", "b" + std::to_string(k), res);
      }
    }
  }

  // Left and right actions commute (bimodule structure).
  for (int k = 0; k < a.dim(); ++k) {
    for (int l = 0; l < a.dim(); ++l) {
      report.add_checked();
      const CMat& b = a.basis()[static_cast<std::size_t>(k)];
      const CMat& c = a.basis()[static_cast<std::size_t>(l)];
      double res = max_abs_diff(CMat(x.left_matrix(b) * x.right_matrix(c)),
                                CMat(x.right_matrix(c) * x.left_matrix(b)));
      if (res > tol.eps) {
        report.add_violation("bimodule",
                             "b" + std::to_string(k) + ",b" + std::to_string(l),
                             res);
      }
    }
  }
  return report;
}

Correspondence algebra_as_correspondence(
    std::shared_ptr<const MatrixStarAlgebra> a) {
  const int n = a->dim();
  std::vector<std::vector<CMat>> inner(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      inner[static_cast<std::size_t>(i)].push_back(
          CMat(a->basis()[static_cast<std::size_t>(i)].adjoint() *
               a->basis()[static_cast<std::size_t>(j)]));
    }
  }
  std::vector<CMat> left, right;
  for (int k = 0; k < n; ++k) {
    const CMat& b = a->basis()[static_cast<std::size_t>(k)];
    CMat lm(n, n), rm(n, n);
    for (int j = 0; j < n; ++j) {
      const CMat& ej = a->basis()[static_cast<std::size_t>(j)];
      auto lc = a->coords(CMat(b * ej));
      auto rc = a->coords(CMat(ej * b));
      if (!lc || !rc) {
        throw ConstructionError(a->name() + ": basis is not closed under products");
      }
      lm.col(j) = *lc;
      rm.col(j) = *rc;
    }
    left.push_back(std::move(lm));
    right.push_back(std::move(rm));
  }
  return Correspondence(a, std::move(inner), std::move(left), std::move(right));
}

}  // namespace zslab
