#include "zslab/product_system.hpp"

#include <sstream>

#include "zslab/errors.hpp"

namespace zslab {

ProductSystem::ProductSystem(Data d) : data_(std::move(d)) {
  if (!data_.grading) throw ConstructionError("product system needs a grading");
  if (!data_.coeff) throw ConstructionError("product system needs coefficients");
  const Elem e = data_.grading->identity();
  if (!data_.ball.contains(e) || !data_.fibers.count(e)) {
    throw ConstructionError("identity fiber missing from the ball");
  }
  for (const Elem& p : data_.ball.elems) {
    if (!data_.fibers.count(p)) {
      throw ConstructionError("fiber missing for " + p.to_string());
    }
  }
  const Correspondence& xe = data_.fibers.at(e);
  if (static_cast<int>(data_.e_basis.size()) != xe.dim()) {
    throw ConstructionError("e_basis size differs from identity fiber");
  }
  for (const auto& [key, m] : data_.mult) {
    const auto& [p, q] = key;
    Elem pq = data_.grading->multiply(p, q);
    if (!data_.ball.contains(pq)) {
      throw ConstructionError("multiplication map stored outside the ball");
    }
    const int mp = data_.fibers.at(p).dim();
    const int mq = data_.fibers.at(q).dim();
    const int mpq = data_.fibers.at(pq).dim();
    if (m.rows() != mpq || m.cols() != static_cast<Eigen::Index>(mp) * mq) {
      throw ConstructionError("multiplication map has wrong shape at (" +
                              p.to_string() + "," + q.to_string() + ")");
    }
  }
}

const Correspondence& ProductSystem::fiber(const Elem& p) const {
  auto it = data_.fibers.find(p);
  if (it == data_.fibers.end()) {
    throw WindowOverflowError("fiber " + p.to_string() + " outside the ball");
  }
  return it->second;
}

bool ProductSystem::mult_defined(const Elem& p, const Elem& q) const {
  return data_.mult.count({p, q}) != 0;
}

const CMat& ProductSystem::mult_matrix(const Elem& p, const Elem& q) const {
  auto it = data_.mult.find({p, q});
  if (it == data_.mult.end()) {
    throw WindowOverflowError("product (" + p.to_string() + ")(" +
                              q.to_string() + ") leaves the ball");
  }
  return it->second;
}

CVec ProductSystem::multiply(const Elem& p, const Elem& q, const CVec& x,
                             const CVec& y) const {
  return mult_matrix(p, q) * kron_vec(x, y);
}

CMat ProductSystem::e_to_ambient(const CVec& x) const {
  const int d = data_.coeff->ambient_dim();
  CMat out = CMat::Zero(d, d);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out += x(i) * data_.e_basis[static_cast<std::size_t>(i)];
  }
  return out;
}

std::optional<CVec> ProductSystem::ambient_to_e(const CMat& a,
                                                double tol) const {
  double res = 0.0;
  CVec c = span_coords(data_.e_basis, a, &res);
  if (res > tol) return std::nullopt;
  return c;
}

CVec ProductSystem::unit_vector() const {
  auto c = ambient_to_e(data_.coeff->unit());
  if (!c.has_value()) {
    throw ConstructionError("coefficient unit is outside the identity fiber");
  }
  return *c;
}

const CMat& ProductSystem::mult_pinv(const Elem& p, const Elem& q) const {
  auto key = std::make_pair(p, q);
  auto it = pinv_cache_.find(key);
  if (it != pinv_cache_.end()) return it->second;
  const CMat& m = mult_matrix(p, q);
  CMat pinv = m.completeOrthogonalDecomposition().pseudoInverse();
  return pinv_cache_.emplace(std::move(key), std::move(pinv)).first->second;
}

CMat ProductSystem::embed_compact(const Elem& p, const Elem& q,
                                  const CMat& s) const {
  const int mq = fiber(q).dim();
  const CMat& m = mult_matrix(p, q);
  return m * kron(s, identity(mq)) * mult_pinv(p, q);
}

CMat ProductSystem::embed_into(const Elem& p, const Elem& r,
                               const CMat& s) const {
  auto q = data_.grading->left_quotient(p, r);
  if (!q.has_value()) {
    throw DomainError(p.to_string() + " does not left-divide " + r.to_string());
  }
  return embed_compact(p, *q, s);
}

std::optional<CMat> ProductSystem::meet(const Elem& p, const Elem& q,
                                        const CMat& s, const CMat& t) const {
  auto r = data_.grading->lcm(p, q);
  if (!r.has_value()) return std::nullopt;
  if (!data_.ball.contains(*r)) {
    throw WindowOverflowError("lcm " + r->to_string() + " outside the ball");
  }
  return CMat(embed_into(p, *r, s) * embed_into(q, *r, t));
}

namespace {

std::string pair_str(const Elem& p, const Elem& q) {
  return "(" + p.to_string() + "," + q.to_string() + ")";
}

}  // namespace

ViolationReport validate_product_system(const ProductSystem& x, Tolerance tol) {
  ViolationReport report("product-system");
  const Semigroup& sg = x.grading();
  const Elem e = sg.identity();
  const Correspondence& xe = x.fiber(e);
  const MatrixStarAlgebra& a = x.coeff();

  // (1) X_e is the coefficient algebra under the ambient identification.
  {
    report.add_checked();
    if (span_rank(x.e_basis(), tol.eps) != a.dim() || xe.dim() != a.dim()) {
      report.add_violation("e-fiber", "identity fiber does not realize the algebra", 1.0);
    }
    for (const CMat& b : x.e_basis()) {
      report.add_checked();
      if (!a.contains(b, tol.eps)) {
        report.add_violation("e-fiber", "e_basis element outside coefficient span", 1.0);
      }
    }
    report.add_checked();
    try {
      x.unit_vector();
    } catch (const ConstructionError&) {
      report.add_violation("e-fiber", "unit not representable in X_e", 1.0);
    }
    for (int i = 0; i < xe.dim(); ++i) {
      CVec ei = CVec::Zero(xe.dim());
      ei(i) = 1.0;
      for (int k = 0; k < a.dim(); ++k) {
        const CMat& b = a.basis()[static_cast<std::size_t>(k)];
        report.add_checked(2);
        double res_r = max_abs_diff(x.e_to_ambient(xe.right_apply(ei, b)),
                                    CMat(x.e_to_ambient(ei) * b));
        double res_l = max_abs_diff(x.e_to_ambient(xe.left_apply(b, ei)),
                                    CMat(b * x.e_to_ambient(ei)));
        if (res_r > tol.eps) {
          report.add_violation("e-fiber", "right action vs algebra product", res_r);
        }
        if (res_l > tol.eps) {
          report.add_violation("e-fiber", "left action vs algebra product", res_l);
        }
      }
      for (int j = 0; j < xe.dim(); ++j) {
        CVec ej = CVec::Zero(xe.dim());
        ej(j) = 1.0;
        report.add_checked();
        double res = max_abs_diff(
            xe.inner_basis(i, j),
            CMat(x.e_to_ambient(ei).adjoint() * x.e_to_ambient(ej)));
        if (res > tol.eps) {
          report.add_violation("e-fiber", "inner product vs x*y", res);
        }
      }
    }
  }

  // (2) Every stored multiplication map is unitary: module isometry plus
  // surjectivity by rank.
  for (const Elem& p : x.ball().elems) {
    for (const Elem& q : x.ball().elems) {
      Elem pq = sg.multiply(p, q);
      if (!x.ball().contains(pq)) {
        report.add_skipped();
        continue;
      }
      if (!x.mult_defined(p, q)) {
        report.add_checked();
        report.add_violation("mult-missing", pair_str(p, q), 1.0);
        continue;
      }
      const Correspondence& xp = x.fiber(p);
      const Correspondence& xq = x.fiber(q);
      const Correspondence& xpq = x.fiber(pq);
      const CMat& m = x.mult_matrix(p, q);
      double worst = 0.0;
      for (int i = 0; i < xp.dim(); ++i) {
        for (int j = 0; j < xq.dim(); ++j) {
          CVec ei = CVec::Zero(xp.dim());
          ei(i) = 1.0;
          CVec ej = CVec::Zero(xq.dim());
          ej(j) = 1.0;
          CVec mij = m * kron_vec(ei, ej);
          for (int k = 0; k < xp.dim(); ++k) {
            for (int l = 0; l < xq.dim(); ++l) {
              CVec ek = CVec::Zero(xp.dim());
              ek(k) = 1.0;
              CVec el = CVec::Zero(xq.dim());
              el(l) = 1.0;
              CVec mkl = m * kron_vec(ek, el);
              CMat lhs = xpq.inner(mij, mkl);
              CMat rhs = xq.inner(ej, xq.left_apply(xp.inner_basis(i, k), el));
              worst = std::max(worst, max_abs_diff(lhs, rhs));
            }
          }
        }
      }
      report.add_checked();
      if (worst > tol.eps) {
        report.add_violation("unitarity", pair_str(p, q), worst);
      }
      report.add_checked();
      std::vector<CMat> cols;
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        cols.push_back(m.col(c));
      }
      if (span_rank(cols, tol.eps) != xpq.dim()) {
        report.add_violation("surjectivity", pair_str(p, q), 1.0);
      }
    }
  }

  // (3) Multiplication by the identity fiber implements the module actions.
  for (const Elem& p : x.ball().elems) {
    const Correspondence& xp = x.fiber(p);
    if (!x.mult_defined(e, p) || !x.mult_defined(p, e)) {
      report.add_checked();
      report.add_violation("mult-missing", "identity products at " + p.to_string(), 1.0);
      continue;
    }
    for (int i = 0; i < xe.dim(); ++i) {
      CVec ai = CVec::Zero(xe.dim());
      ai(i) = 1.0;
      CMat amb = x.e_to_ambient(ai);
      for (int j = 0; j < xp.dim(); ++j) {
        CVec ej = CVec::Zero(xp.dim());
        ej(j) = 1.0;
        report.add_checked(2);
        double res_l =
            max_abs_diff(CMat(x.multiply(e, p, ai, ej)), CMat(xp.left_apply(amb, ej)));
        double res_r =
            max_abs_diff(CMat(x.multiply(p, e, ej, ai)), CMat(xp.right_apply(ej, amb)));
        if (res_l > tol.eps) {
          report.add_violation("e-action", "X_e x X_p at " + p.to_string(), res_l);
        }
        if (res_r > tol.eps) {
          report.add_violation("e-action", "X_p x X_e at " + p.to_string(), res_r);
        }
      }
    }
  }

  // (4) Associativity on in-ball triples.
  for (const Elem& p : x.ball().elems) {
    for (const Elem& q : x.ball().elems) {
      Elem pq = sg.multiply(p, q);
      if (!x.ball().contains(pq)) {
        report.add_skipped();
        continue;
      }
      for (const Elem& r : x.ball().elems) {
        Elem qr = sg.multiply(q, r);
        Elem pqr = sg.multiply(pq, r);
        if (!x.ball().contains(qr) || !x.ball().contains(pqr)) {
          report.add_skipped();
          continue;
        }
        const int mp = x.fiber(p).dim();
        const int mr = x.fiber(r).dim();
        CMat lhs = x.mult_matrix(pq, r) * kron(x.mult_matrix(p, q), identity(mr));
        CMat rhs = x.mult_matrix(p, qr) * kron(identity(mp), x.mult_matrix(q, r));
        report.add_checked();
        double res = max_abs_diff(lhs, rhs);
        if (res > tol.eps) {
          report.add_violation("associativity",
                               "(" + p.to_string() + "," + q.to_string() + "," +
                                   r.to_string() + ")",
                               res);
        }
      }
    }
  }
  return report;
}

ViolationReport validate_fibers(const ProductSystem& x, Tolerance tol) {
  ViolationReport report("fibers");
  for (const auto& [p, f] : x.fibers()) {
    ViolationReport r = validate_correspondence(f, tol);
    ViolationReport renamed("fiber " + p.to_string());
    renamed.merge(r);
    report.merge(renamed);
  }
  return report;
}

namespace {

// Least-squares membership tester with the decomposition built once.
class SpanTester {
 public:
  explicit SpanTester(const std::vector<CMat>& basis) {
    const Eigen::Index n = basis[0].size();
    stacked_.resize(n, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      stacked_.col(static_cast<Eigen::Index>(k)) =
          Eigen::Map<const CVec>(basis[k].data(), n);
    }
    cod_ = stacked_.completeOrthogonalDecomposition();
  }

  double residual(const CMat& target) const {
    CVec rhs = Eigen::Map<const CVec>(target.data(), target.size());
    CVec c = cod_.solve(rhs);
    return (stacked_ * c - rhs).cwiseAbs().maxCoeff();
  }

 private:
  CMat stacked_;
  Eigen::CompleteOrthogonalDecomposition<CMat> cod_;
};

std::vector<CMat> rank_one_basis(const Correspondence& f) {
  std::vector<CMat> out;
  for (int i = 0; i < f.dim(); ++i) {
    CVec ei = CVec::Zero(f.dim());
    ei(i) = 1.0;
    for (int j = 0; j < f.dim(); ++j) {
      CVec ej = CVec::Zero(f.dim());
      ej(j) = 1.0;
      out.push_back(f.rank_one(ei, ej));
    }
  }
  return out;
}

}  // namespace

ViolationReport check_compactly_aligned(const ProductSystem& x, Tolerance tol) {
  ViolationReport report("compactly-aligned");
  const Semigroup& sg = x.grading();
  if (!sg.right_lcm_available()) {
    throw UnsupportedStructureError(sg.describe() + " is not right LCM");
  }
  std::map<Elem, std::vector<CMat>> thetas;
  std::map<Elem, SpanTester> testers;
  for (const Elem& p : x.ball().elems) {
    auto basis = rank_one_basis(x.fiber(p));
    testers.emplace(p, SpanTester(basis));
    thetas.emplace(p, std::move(basis));
  }
  for (const Elem& p : x.ball().elems) {
    for (const Elem& q : x.ball().elems) {
      auto r = sg.lcm(p, q);
      if (!r.has_value() || !x.ball().contains(*r)) {
        report.add_skipped();
        continue;
      }
      const SpanTester& tester = testers.at(*r);
      std::vector<CMat> embedded_s, embedded_t;
      for (const CMat& s : thetas.at(p)) embedded_s.push_back(x.embed_into(p, *r, s));
      for (const CMat& t : thetas.at(q)) embedded_t.push_back(x.embed_into(q, *r, t));
      double worst = 0.0;
      for (const CMat& is : embedded_s) {
        for (const CMat& it : embedded_t) {
          worst = std::max(worst, tester.residual(CMat(is * it)));
        }
      }
      report.add_checked();
      if (worst > tol.eps) {
        report.add_violation("compact-alignment", pair_str(p, q), worst);
      }
    }
  }
  return report;
}

}  // namespace zslab
