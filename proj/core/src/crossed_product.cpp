#include "zslab/crossed_product.hpp"

#include "zslab/errors.hpp"

namespace zslab {

CrossedProduct::CrossedProduct(std::shared_ptr<const MatrixStarAlgebra> coeff,
                               std::shared_ptr<const Group> group, Action beta)
    : coeff_(std::move(coeff)), group_(std::move(group)), beta_(std::move(beta)) {
  if (!group_->finite()) {
    throw UnsupportedStructureError(
        "crossed product model requires a finite group");
  }
  elements_ = group_->elements();
  const int d = coeff_->ambient_dim();
  const int n = static_cast<int>(elements_.size());

  for (int gi = 0; gi < n; ++gi) {
    const Elem& g = elements_[static_cast<std::size_t>(gi)];
    CMat lam = CMat::Zero(static_cast<Eigen::Index>(d) * n,
                          static_cast<Eigen::Index>(d) * n);
    for (int hi = 0; hi < n; ++hi) {
      const Elem& h = elements_[static_cast<std::size_t>(hi)];
      int src = group_index(group_->multiply(group_->inverse(g), h));
      lam.block(static_cast<Eigen::Index>(hi) * d,
                static_cast<Eigen::Index>(src) * d, d, d) = identity(d);
    }
    u_.emplace(g, std::move(lam));
  }

  std::vector<CMat> basis;
  for (const Elem& g : elements_) {
    for (int k = 0; k < coeff_->dim(); ++k) {
      CMat gen = pi(coeff_->basis()[static_cast<std::size_t>(k)]) * u(g);
      gens_.emplace(std::make_pair(k, g), gen);
      basis.push_back(std::move(gen));
    }
  }
  algebra_ = std::make_shared<MatrixStarAlgebra>(
      std::move(basis), CMat(identity(d * n)),
      coeff_->name() + " x| " + group_->describe());
}

int CrossedProduct::group_index(const Elem& g) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == g) return static_cast<int>(i);
  }
  throw DomainError("element outside the group");
}

CMat CrossedProduct::pi(const CMat& a) const {
  const int d = coeff_->ambient_dim();
  const int n = static_cast<int>(elements_.size());
  CMat out = CMat::Zero(static_cast<Eigen::Index>(d) * n,
                        static_cast<Eigen::Index>(d) * n);
  for (int hi = 0; hi < n; ++hi) {
    const Elem& h = elements_[static_cast<std::size_t>(hi)];
    out.block(static_cast<Eigen::Index>(hi) * d,
              static_cast<Eigen::Index>(hi) * d, d, d) =
        beta_ambient(group_->inverse(h), a);
  }
  return out;
}

const CMat& CrossedProduct::u(const Elem& g) const {
  auto it = u_.find(g);
  if (it == u_.end()) throw DomainError("element outside the group");
  return it->second;
}

const CMat& CrossedProduct::generator(int basis_index, const Elem& g) const {
  auto it = gens_.find({basis_index, g});
  if (it == gens_.end()) throw DomainError("generator index out of range");
  return it->second;
}

CMat CrossedProduct::expectation(const CMat& t) const {
  const int d = coeff_->ambient_dim();
  const int n = static_cast<int>(elements_.size());
  if (t.rows() != static_cast<Eigen::Index>(d) * n ||
      t.cols() != static_cast<Eigen::Index>(d) * n) {
    throw DimensionError("expectation: shape mismatch");
  }
  // Diagonal block at h equals beta_{h^{-1}}(a_e); average the pullbacks.
  CMat out = CMat::Zero(d, d);
  for (int hi = 0; hi < n; ++hi) {
    const Elem& h = elements_[static_cast<std::size_t>(hi)];
    CMat block = t.block(static_cast<Eigen::Index>(hi) * d,
                         static_cast<Eigen::Index>(hi) * d, d, d);
    out += beta_ambient(h, block);
  }
  return out / static_cast<double>(n);
}

CMat CrossedProduct::beta_ambient(const Elem& g, const CMat& a) const {
  return apply_algebra_map(beta_(g), *coeff_, a);
}

ViolationReport CrossedProduct::check(Tolerance tol) const {
  ViolationReport report("crossed-product");
  const Elem e = group_->identity();

  // u is a unitary representation.
  for (const Elem& g : elements_) {
    report.add_checked(2);
    double unit_res =
        max_abs_diff(CMat(u(g).adjoint() * u(g)), identity(static_cast<int>(u(g).rows())));
    if (unit_res > tol.eps) {
      report.add_violation("u-unitary", g.to_string(), unit_res);
    }
    for (const Elem& h : elements_) {
      report.add_checked();
      double res = max_abs_diff(CMat(u(g) * u(h)), u(group_->multiply(g, h)));
      if (res > tol.eps) {
        report.add_violation("u-multiplicative",
                             g.to_string() + "," + h.to_string(), res);
      }
    }
  }
  report.add_checked();
  if (max_abs_diff(u(e), identity(static_cast<int>(u(e).rows()))) > tol.eps) {
    report.add_violation("u-unit", "u_e != 1", 1.0);
  }

  // pi is a unital *-homomorphism.
  for (int i = 0; i < coeff_->dim(); ++i) {
    const CMat& a = coeff_->basis()[static_cast<std::size_t>(i)];
    report.add_checked();
    double star_res = max_abs_diff(CMat(pi(a).adjoint()), pi(CMat(a.adjoint())));
    if (star_res > tol.eps) {
      report.add_violation("pi-star", "b" + std::to_string(i), star_res);
    }
    for (int j = 0; j < coeff_->dim(); ++j) {
      const CMat& b = coeff_->basis()[static_cast<std::size_t>(j)];
      report.add_checked();
      double res = max_abs_diff(CMat(pi(a) * pi(b)), pi(CMat(a * b)));
      if (res > tol.eps) {
        report.add_violation("pi-multiplicative",
                             "b" + std::to_string(i) + "b" + std::to_string(j),
                             res);
      }
    }
  }
  report.add_checked();
  double unital = max_abs_diff(pi(coeff_->unit()),
                               identity(static_cast<int>(u(e).rows())));
  if (unital > tol.eps) report.add_violation("pi-unital", "pi(1)", unital);

  // Covariance u_g a = beta_g(a) u_g.
  for (const Elem& g : elements_) {
    for (int i = 0; i < coeff_->dim(); ++i) {
      const CMat& a = coeff_->basis()[static_cast<std::size_t>(i)];
      report.add_checked();
      double res = max_abs_diff(CMat(u(g) * pi(a)),
                                CMat(pi(beta_ambient(g, a)) * u(g)));
      if (res > tol.eps) {
        report.add_violation("covariance",
                             "u_" + g.to_string() + " b" + std::to_string(i),
                             res);
      }
    }
  }

  // Phi reads off the u_e coefficient, is idempotent onto the coefficient
  // copy, contractive and positivity-preserving on test elements.
  for (const Elem& g : elements_) {
    for (int i = 0; i < coeff_->dim(); ++i) {
      const CMat& a = coeff_->basis()[static_cast<std::size_t>(i)];
      CMat t = pi(a) * u(g);
      report.add_checked();
      CMat expected = (g == e) ? a : CMat(CMat::Zero(a.rows(), a.cols()));
      double res = max_abs_diff(expectation(t), expected);
      if (res > tol.eps) {
        report.add_violation("expectation",
                             "Phi(b" + std::to_string(i) + " u_" + g.to_string() + ")",
                             res);
      }
      report.add_checked();
      double idem = max_abs_diff(expectation(pi(expectation(t))), expectation(t));
      if (idem > tol.eps) {
        report.add_violation("expectation-idempotent",
                             "b" + std::to_string(i) + " u_" + g.to_string(),
                             idem);
      }
      report.add_checked();
      if (op_norm(expectation(t)) > op_norm(t) + tol.eps) {
        report.add_violation("expectation-contractive",
                             "b" + std::to_string(i) + " u_" + g.to_string(),
                             op_norm(expectation(t)) - op_norm(t));
      }
    }
  }
  for (const Elem& g : elements_) {
    for (int i = 0; i < coeff_->dim(); ++i) {
      const CMat& a = coeff_->basis()[static_cast<std::size_t>(i)];
      CMat t = pi(CMat(a.adjoint() * a));
      report.add_checked();
      CMat moved = expectation(CMat(u(g).adjoint() * t * u(g)));
      if (!is_positive(moved, tol)) {
        report.add_violation("expectation-positive",
                             "u_" + g.to_string() + "* b" + std::to_string(i) +
                                 "*b" + std::to_string(i) + " u_" + g.to_string(),
                             -min_eigenvalue(moved));
      }
    }
  }

  report.merge(algebra_->check_closure(tol));
  return report;
}

int CrossedProduct::center_dimension(double tol) const {
  const auto& basis = algebra_->basis();
  const int n = static_cast<int>(basis.size());
  const Eigen::Index block = basis[0].size();
  CMat system(static_cast<Eigen::Index>(n) * block, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      CMat comm = basis[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(j)] -
                  basis[static_cast<std::size_t>(j)] * basis[static_cast<std::size_t>(i)];
      system.block(static_cast<Eigen::Index>(j) * block, i, block, 1) =
          Eigen::Map<const CVec>(comm.data(), block);
    }
  }
  auto cod = system.completeOrthogonalDecomposition();
  cod.setThreshold(tol);
  return n - static_cast<int>(cod.rank());
}

std::shared_ptr<const CrossedProduct> build_crossed_product(
    std::shared_ptr<const MatrixStarAlgebra> coeff,
    std::shared_ptr<const Group> group, CrossedProduct::Action beta,
    Tolerance tol) {
  // The action must be by *-automorphisms and multiplicative in g.
  for (const Elem& g : group->elements()) {
    ViolationReport hom = check_star_homomorphism(beta(g), *coeff, *coeff, tol);
    if (!hom.ok()) {
      throw ConstructionError("action of " + g.to_string() +
                              " is not a *-homomorphism: " + hom.summary());
    }
  }
  for (const Elem& g : group->elements()) {
    for (const Elem& h : group->elements()) {
      AlgebraMap fg = beta(g), fh = beta(h), fgh = beta(group->multiply(g, h));
      for (int k = 0; k < coeff->dim(); ++k) {
        CMat lhs = apply_algebra_map(fg, *coeff, fh.images[static_cast<std::size_t>(k)]);
        if (max_abs_diff(lhs, fgh.images[static_cast<std::size_t>(k)]) > tol.eps) {
          throw ConstructionError("action is not multiplicative at (" +
                                  g.to_string() + "," + h.to_string() + ")");
        }
      }
    }
  }
  auto cp = std::make_shared<CrossedProduct>(coeff, group, std::move(beta));
  ViolationReport report = cp->check(tol);
  if (!report.ok()) {
    throw ConstructionError("crossed product failed verification: " +
                            report.summary());
  }
  return cp;
}

}  // namespace zslab
