#include "zslab/zs_action.hpp"

#include "zslab/errors.hpp"

namespace zslab {

const CMat& ZSAction::matrix(const Elem& g, const Elem& p) const {
  auto key = std::make_pair(g, p);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  CMat m = fn_(g, p);
  return memo_.emplace(std::move(key), std::move(m)).first->second;
}

std::shared_ptr<const ZSAction> ZSAction::with_scale_override(
    const Elem& g, const Elem& p, Complex factor) const {
  MapFn base = fn_;
  return std::make_shared<ZSAction>(
      [base, g, p, factor](const Elem& h, const Elem& q) {
        CMat m = base(h, q);
        if (h == g && q == p) m *= factor;
        return m;
      });
}

AlgebraMap ZSSystem::beta_on_algebra(const Elem& g) const {
  const Elem e = system->grading().identity();
  const CMat& be = beta->matrix(g, e);
  AlgebraMap f;
  for (const CMat& b : system->coeff().basis()) {
    auto coords = system->ambient_to_e(b);
    if (!coords.has_value()) {
      throw DomainError("coefficient basis element not representable in X_e");
    }
    f.images.push_back(system->e_to_ambient(be * *coords));
  }
  return f;
}

CMat ZSSystem::beta_ambient(const Elem& g, const CMat& a) const {
  auto coords = system->ambient_to_e(a);
  if (!coords.has_value()) {
    throw DomainError("element outside the coefficient span");
  }
  const Elem e = system->grading().identity();
  return system->e_to_ambient(beta->matrix(g, e) * *coords);
}

CVec apply_beta(const ZSSystem& s, const Elem& g, const Elem& p,
                const CVec& x) {
  if (!s.system->ball().contains(p)) {
    throw WindowOverflowError("fiber " + p.to_string() + " outside the window");
  }
  Elem gp = s.zs->act(g, p);
  if (!s.system->ball().contains(gp)) {
    throw WindowOverflowError("image fiber " + gp.to_string() +
                              " outside the window");
  }
  return s.beta->matrix(g, p) * x;
}

ViolationReport validate_zs_action(const ZSSystem& s, Tolerance tol) {
  ViolationReport report("action-axioms");
  const ProductSystem& x = *s.system;
  const ZSData& zs = *s.zs;
  const Ball& pball = x.ball();
  const Ball& gball = s.gball;
  const Elem e = x.grading().identity();
  const Elem eg = zs.G().identity();

  auto tuple = [](std::initializer_list<Elem> elems) {
    std::string out = "(";
    bool first = true;
    for (const auto& el : elems) {
      if (!first) out += ", ";
      out += el.to_string();
      first = false;
    }
    return out + ")";
  };

  // (A1) beta_g^p is a linear map X_p -> X_{g.p} of full rank.
  for (const Elem& g : gball.elems) {
    for (const Elem& p : pball.elems) {
      Elem gp = zs.act(g, p);
      if (!pball.contains(gp)) {
        report.add_skipped();
        continue;
      }
      report.add_checked();
      const CMat& m = s.beta_matrix(g, p);
      if (m.rows() != x.fiber(gp).dim() || m.cols() != x.fiber(p).dim()) {
        report.add_violation("A1", tuple({g, p}) + " shape mismatch", 1.0);
        continue;
      }
      if (!all_finite(m)) {
        report.add_violation("A1", tuple({g, p}) + " non-finite entries", 1.0);
        continue;
      }
      auto cod = m.completeOrthogonalDecomposition();
      cod.setThreshold(tol.eps);
      if (static_cast<int>(cod.rank()) != x.fiber(p).dim() ||
          x.fiber(p).dim() != x.fiber(gp).dim()) {
        report.add_violation("A1", tuple({g, p}) + " not bijective", 1.0);
      }
    }
  }

  // (A3) beta_e = id.
  for (const Elem& p : pball.elems) {
    report.add_checked();
    double res = max_abs_diff(s.beta_matrix(eg, p), identity(x.fiber(p).dim()));
    if (res > tol.eps) report.add_violation("A3", tuple({p}), res);
  }

  // (A2) beta_g o beta_h = beta_{gh} on every in-window fiber.
  for (const Elem& g : gball.elems) {
    for (const Elem& h : gball.elems) {
      Elem gh = zs.G().multiply(g, h);
      for (const Elem& p : pball.elems) {
        Elem hp = zs.act(h, p);
        if (!pball.contains(hp) || !pball.contains(zs.act(g, hp))) {
          report.add_skipped();
          continue;
        }
        report.add_checked();
        try {
          CMat lhs = s.beta_matrix(g, hp) * s.beta_matrix(h, p);
          double res = max_abs_diff(lhs, s.beta_matrix(gh, p));
          if (res > tol.eps) report.add_violation("A2", tuple({g, h, p}), res);
        } catch (const DimensionError&) {
          report.add_violation("A2", tuple({g, h, p}) + " shape mismatch", 1.0);
        }
      }
    }
  }

  // (A4) beta_g is a unital *-automorphism of the coefficient algebra.
  for (const Elem& g : gball.elems) {
    report.add_checked();
    AlgebraMap f;
    try {
      f = s.beta_on_algebra(g);
    } catch (const DomainError&) {
      report.add_violation("A4", tuple({g}) + " not defined on the algebra", 1.0);
      continue;
    }
    ViolationReport hom = check_star_homomorphism(f, x.coeff(), x.coeff(), tol);
    if (!hom.ok()) {
      const auto& w = hom.witnesses().front();
      report.add_violation("A4", tuple({g}) + " " + w.tag + " at " + w.witness,
                           hom.worst_residual());
    }
    report.add_checked();
    if (span_rank(f.images, tol.eps) != x.coeff().dim()) {
      report.add_violation("A4", tuple({g}) + " not surjective on the algebra",
                           1.0);
    }
  }

  // (A5) beta_g(xy) = beta_g(x) beta_{g|_p}(y) through the multiplication
  // maps: beta_g^{pq} M_{p,q} = M_{g.p, g|_p.q} (beta_g^p (x) beta_{g|_p}^q).
  for (const Elem& g : gball.elems) {
    for (const Elem& p : pball.elems) {
      Elem gp = zs.act(g, p);
      Elem g_res = zs.restriction(g, p);
      for (const Elem& q : pball.elems) {
        Elem pq = x.grading().multiply(p, q);
        Elem resq = zs.act(g_res, q);
        if (!pball.contains(pq) || !pball.contains(gp) ||
            !pball.contains(resq) ||
            !pball.contains(x.grading().multiply(gp, resq))) {
          report.add_skipped();
          continue;
        }
        report.add_checked();
        try {
          CMat lhs = s.beta_matrix(g, pq) * x.mult_matrix(p, q);
          CMat rhs = x.mult_matrix(gp, resq) *
                     kron(s.beta_matrix(g, p), s.beta_matrix(g_res, q));
          double res = max_abs_diff(lhs, rhs);
          if (res > tol.eps) report.add_violation("A5", tuple({g, p, q}), res);
        } catch (const DimensionError&) {
          report.add_violation("A5", tuple({g, p, q}) + " shape mismatch", 1.0);
        }
      }
    }
  }

  // (A6) <beta_g x, beta_g y> = beta_{g|_p}(<x, y>).
  for (const Elem& g : gball.elems) {
    for (const Elem& p : pball.elems) {
      Elem gp = zs.act(g, p);
      if (!pball.contains(gp)) {
        report.add_skipped();
        continue;
      }
      const Correspondence& xp = x.fiber(p);
      const Correspondence& xgp = x.fiber(gp);
      const CMat& bm = s.beta_matrix(g, p);
      Elem g_res = zs.restriction(g, p);
      report.add_checked();
      try {
        double worst = 0.0;
        for (int i = 0; i < xp.dim(); ++i) {
          for (int j = 0; j < xp.dim(); ++j) {
            CMat lhs = xgp.inner(bm.col(i), bm.col(j));
            CMat rhs = s.beta_ambient(g_res, xp.inner_basis(i, j));
            worst = std::max(worst, max_abs_diff(lhs, rhs));
          }
        }
        if (worst > tol.eps) report.add_violation("A6", tuple({g, p}), worst);
      } catch (const DimensionError&) {
        report.add_violation("A6", tuple({g, p}) + " shape mismatch", 1.0);
      } catch (const DomainError&) {
        report.add_violation("A6", tuple({g, p}) + " image outside the algebra",
                             1.0);
      }
    }
  }
  return report;
}

bool is_homogeneous(const ZSSystem& s) {
  for (const Elem& g : s.gball.elems) {
    for (const Elem& p : s.system->ball().elems) {
      if (s.zs->act(g, p) != p) return false;
    }
  }
  return true;
}

}  // namespace zslab
