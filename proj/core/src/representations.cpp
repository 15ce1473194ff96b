#include "zslab/representations.hpp"

#include <algorithm>

#include "zslab/errors.hpp"

namespace zslab {

ToeplitzRep to_joint_rep(const ToeplitzRep& psi, const UnitaryRep& u,
                         const BowtieSystem& y, bool validate, Tolerance tol) {
  if (validate) {
    ViolationReport cov = validate_covariance(psi, u, y.base, tol);
    if (!cov.ok()) {
      throw ConstructionError("covariance fails, refusing joint representation: " +
                              cov.summary());
    }
  }
  std::map<Elem, std::vector<CMat>> maps;
  for (const Elem& pg : y.system->ball().elems) {
    const Elem& p = pg.first();
    const Elem& g = pg.second();
    if (!psi.has_fiber(p) || !u.has(g)) continue;
    std::vector<CMat> mats;
    for (const CMat& m : psi.fiber_maps(p)) {
      mats.push_back(m * u.at(g));
    }
    maps.emplace(pg, std::move(mats));
  }
  auto zs = y.base.zs;
  auto fock = psi.fock();
  ToeplitzRep::SlotFn slot_act = nullptr;
  ToeplitzRep::SlotFn slot_pre = nullptr;
  if (fock) {
    auto grading = y.base.system->grading_ptr();
    slot_act = [zs, fock, grading](const Elem& pg,
                                   const Elem& s) -> std::optional<Elem> {
      Elem gs = zs->act(pg.second(), s);
      if (!fock->has(gs)) return std::nullopt;
      Elem t = grading->multiply(pg.first(), gs);
      if (!fock->has(t)) return std::nullopt;
      return t;
    };
    slot_pre = [zs, grading](const Elem& pg,
                             const Elem& t) -> std::optional<Elem> {
      auto q = grading->left_quotient(pg.first(), t);
      if (!q.has_value()) return std::nullopt;
      return zs->act(zs->G().inverse(pg.second()), *q);
    };
  }
  return ToeplitzRep(y.system, psi.space_dim(), std::move(maps), fock,
                     slot_act, slot_pre);
}

namespace {

ToeplitzRep::SlotFn base_slot_action(std::shared_ptr<const Semigroup> grading,
                                     std::shared_ptr<const FockSpace> fock) {
  if (!fock) return nullptr;
  return [grading, fock](const Elem& p, const Elem& s) -> std::optional<Elem> {
    Elem ps = grading->multiply(p, s);
    if (!fock->has(ps)) return std::nullopt;
    return ps;
  };
}

ToeplitzRep::SlotFn base_slot_preimage(
    std::shared_ptr<const Semigroup> grading,
    std::shared_ptr<const FockSpace> fock) {
  if (!fock) return nullptr;
  return [grading](const Elem& p, const Elem& t) -> std::optional<Elem> {
    return grading->left_quotient(p, t);
  };
}

}  // namespace

CovariantPair from_joint_rep(const ToeplitzRep& joint, const BowtieSystem& y) {
  const ProductSystem& base = *y.base.system;
  const Elem eg = y.base.zs->G().identity();
  const Elem ep = base.grading().identity();

  std::map<Elem, std::vector<CMat>> psi_maps;
  for (const Elem& p : base.ball().elems) {
    Elem pg = Elem::pair(p, eg);
    if (!joint.has_fiber(pg)) continue;
    psi_maps.emplace(p, joint.fiber_maps(pg));
  }
  auto fock = joint.fock();
  ToeplitzRep psi(y.base.system, joint.space_dim(), std::move(psi_maps), fock,
                  base_slot_action(base.grading_ptr(), fock),
                  base_slot_preimage(base.grading_ptr(), fock));

  CVec unit = base.unit_vector();
  UnitaryRep u;
  u.group = y.base.zs->G_ptr();
  u.domain = y.base.gball;
  u.space_dim = joint.space_dim();
  for (const Elem& g : y.base.gball.elems) {
    Elem eg_pair = Elem::pair(ep, g);
    if (!joint.has_fiber(eg_pair)) continue;
    CMat ug = CMat::Zero(joint.space_dim(), joint.space_dim());
    const auto& mats = joint.fiber_maps(eg_pair);
    for (Eigen::Index i = 0; i < unit.size(); ++i) {
      ug += unit(i) * mats[static_cast<std::size_t>(i)];
    }
    u.mats.emplace(g, std::move(ug));
  }

  CovariantPair out{std::move(psi), std::move(u), true, 0.0};
  CMat psi_unit = out.psi.apply(ep, unit);
  out.unital_residual =
      max_abs_diff(psi_unit, identity(joint.space_dim()));
  out.psi_e_unital = out.unital_residual <= 1e-9;
  return out;
}

ToeplitzRep to_tilde_rep(const ToeplitzRep& psi, const UnitaryRep& u,
                         const TildeSystem& z, bool validate, Tolerance tol) {
  if (validate) {
    ViolationReport cov = validate_covariance(psi, u, z.base, tol);
    if (!cov.ok()) {
      throw ConstructionError("covariance fails, refusing representation: " +
                              cov.summary());
    }
  }
  const std::vector<Elem>& gs = z.crossed->group_elements();
  std::map<Elem, std::vector<CMat>> maps;
  for (const Elem& p : z.system->ball().elems) {
    if (!psi.has_fiber(p)) continue;
    const auto& base_mats = psi.fiber_maps(p);
    std::vector<CMat> mats;
    mats.reserve(base_mats.size() * gs.size());
    for (const Elem& g : gs) {
      for (const CMat& m : base_mats) {
        mats.push_back(m * u.at(g));
      }
    }
    maps.emplace(p, std::move(mats));
  }
  auto fock = psi.fock();
  auto grading = z.system->grading_ptr();
  return ToeplitzRep(z.system, psi.space_dim(), std::move(maps), fock,
                     base_slot_action(grading, fock),
                     base_slot_preimage(grading, fock));
}

CovariantPair from_tilde_rep(const ToeplitzRep& rep, const TildeSystem& z) {
  const ProductSystem& base = *z.base.system;
  const Elem ep = base.grading().identity();
  const std::vector<Elem>& gs = z.crossed->group_elements();
  const int ng = static_cast<int>(gs.size());
  const int e_index = z.crossed->group_index(z.base.zs->G().identity());

  std::map<Elem, std::vector<CMat>> psi_maps;
  for (const Elem& p : base.ball().elems) {
    if (!rep.has_fiber(p)) continue;
    const auto& mats = rep.fiber_maps(p);
    const int m = base.fiber(p).dim();
    std::vector<CMat> base_mats;
    for (int i = 0; i < m; ++i) {
      base_mats.push_back(mats[static_cast<std::size_t>(e_index * m + i)]);
    }
    psi_maps.emplace(p, std::move(base_mats));
  }
  auto fock = rep.fock();
  ToeplitzRep psi(z.base.system, rep.space_dim(), std::move(psi_maps), fock,
                  base_slot_action(base.grading_ptr(), fock),
                  base_slot_preimage(base.grading_ptr(), fock));

  CVec unit = base.unit_vector();
  const int ne = base.fiber(ep).dim();
  UnitaryRep u;
  u.group = z.base.zs->G_ptr();
  u.domain = Ball::of(gs, 1, true);
  u.space_dim = rep.space_dim();
  const auto& e_mats = rep.fiber_maps(ep);
  for (int gi = 0; gi < ng; ++gi) {
    CMat ug = CMat::Zero(rep.space_dim(), rep.space_dim());
    for (int i = 0; i < ne; ++i) {
      ug += unit(i) * e_mats[static_cast<std::size_t>(gi * ne + i)];
    }
    u.mats.emplace(gs[static_cast<std::size_t>(gi)], std::move(ug));
  }

  CovariantPair out{std::move(psi), std::move(u), true, 0.0};
  CMat psi_unit = out.psi.apply(ep, unit);
  out.unital_residual = max_abs_diff(psi_unit, identity(rep.space_dim()));
  out.psi_e_unital = out.unital_residual <= 1e-9;
  return out;
}

ToeplitzRep transport_rep(const ToeplitzRep& rep, const TildeSystem& z,
                          const BowtieSystem& y, Tolerance tol) {
  CovariantPair pair = from_tilde_rep(rep, z);
  return to_joint_rep(pair.psi, pair.u, y, /*validate=*/true, tol);
}

CMat iota(const BowtieSystem& y, const Elem& p, const Elem& g, const CMat& s,
          double tol) {
  const Correspondence& xp = y.base.system->fiber(p);
  if (!xp.module_adjoint(s, tol).has_value()) {
    throw DomainError("operator is not adjointable on the base fiber");
  }
  (void)g;
  return s;
}

ViolationReport check_iota(const BowtieSystem& y, Tolerance tol,
                           double exact_tol) {
  ViolationReport report("iota");
  const ProductSystem& x = *y.base.system;
  for (const Elem& pg : y.system->ball().elems) {
    const Elem& p = pg.first();
    const Correspondence& xp = x.fiber(p);
    const Correspondence& yp = y.system->fiber(pg);
    const int m = xp.dim();
    double worst_theta = 0.0;
    double worst_adj = 0.0;
    double worst_norm = 0.0;
    for (int i = 0; i < m; ++i) {
      CVec ei = CVec::Zero(m);
      ei(i) = 1.0;
      for (int j = 0; j < m; ++j) {
        CVec ej = CVec::Zero(m);
        ej(j) = 1.0;
        CMat theta_x = xp.rank_one(ei, ej);
        CMat theta_y = yp.rank_one(ei, ej);
        worst_theta = std::max(worst_theta, max_abs_diff(theta_x, theta_y));
        auto adj_x = xp.module_adjoint(theta_x, tol.eps);
        auto adj_y = yp.module_adjoint(theta_x, tol.eps);
        if (!adj_x.has_value() || !adj_y.has_value()) {
          worst_adj = std::max(worst_adj, 1.0);
        } else {
          worst_adj = std::max(worst_adj, max_abs_diff(*adj_x, *adj_y));
        }
        worst_norm =
            std::max(worst_norm, std::abs(xp.module_norm(theta_x) -
                                          yp.module_norm(theta_x)));
      }
    }
    report.add_checked(3);
    if (worst_theta > exact_tol) {
      report.add_violation("iota-theta", pg.to_string(), worst_theta);
    }
    if (worst_adj > tol.eps) {
      report.add_violation("iota-adjoint", pg.to_string(), worst_adj);
    }
    if (worst_norm > tol.eps) {
      report.add_violation("iota-isometry", pg.to_string(), worst_norm);
    }
  }
  return report;
}

double cp_defect(const ToeplitzRep& rep, const Elem& fiber, double tol) {
  const ProductSystem& x = rep.system();
  const Correspondence& xf = x.fiber(fiber);
  CMat safe = rep.safe_cp(fiber);
  double defect = 0.0;
  for (const CMat& b : x.coeff().basis()) {
    CMat lhs = rep.psi_hat(fiber, xf.left_matrix(b), tol);
    CMat rhs = rep.apply_e_ambient(b);
    defect = std::max(defect, op_norm(CMat((lhs - rhs) * safe)));
  }
  return defect;
}

double nica_residual(const ToeplitzRep& rep, const Elem& p, const Elem& q,
                     const CMat& s, const CMat& t, double tol) {
  const ProductSystem& x = rep.system();
  CMat a = rep.psi_hat(p, s, tol) * rep.psi_hat(q, t, tol);
  auto meet = x.meet(p, q, s, t);
  if (!meet.has_value()) {
    CMat safe = rep.safe_all_of({p, q});
    return op_norm(CMat(a * safe));
  }
  Elem r = *x.grading().lcm(p, q);
  CMat b = rep.psi_hat(r, *meet, tol);
  CMat safe = rep.safe_all_of({p, q, r});
  return op_norm(CMat((a - b) * safe));
}

ViolationReport check_cp_equivalence(const ToeplitzRep& joint,
                                     const CovariantPair& pair,
                                     const BowtieSystem& y, Tolerance tol) {
  ViolationReport report("cp-equivalence");
  const ProductSystem& x = *y.base.system;
  for (const Elem& pg : y.system->ball().elems) {
    if (!joint.has_fiber(pg)) {
      report.add_skipped();
      continue;
    }
    const Elem& p = pg.first();
    const Correspondence& xp = x.fiber(p);
    const int m = xp.dim();
    // Psi^(p,g) after iota agrees with psi^(p) on spanning compacts.
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      CVec ei = CVec::Zero(m);
      ei(i) = 1.0;
      for (int j = 0; j < m; ++j) {
        CVec ej = CVec::Zero(m);
        ej(j) = 1.0;
        CMat theta = xp.rank_one(ei, ej);
        CMat lhs = joint.psi_hat(pg, theta, tol.eps);
        CMat rhs = pair.psi.psi_hat(p, theta, tol.eps);
        worst = std::max(worst, max_abs_diff(lhs, rhs));
      }
    }
    report.add_checked();
    if (worst > tol.eps) {
      report.add_violation("compact-transport", pg.to_string(), worst);
    }
    // Defect agreement.
    report.add_checked();
    double dj = cp_defect(joint, pg, tol.eps);
    double dp = cp_defect(pair.psi, p, tol.eps);
    if (std::abs(dj - dp) > tol.eps) {
      report.add_violation("defect-agreement",
                           pg.to_string() + " vs " + p.to_string(),
                           std::abs(dj - dp));
    }
  }
  return report;
}

ViolationReport check_nica_equivalence(const ToeplitzRep& joint,
                                       const CovariantPair& pair,
                                       const BowtieSystem& y, Tolerance tol,
                                       double exact_tol) {
  ViolationReport report("nica-equivalence");
  const ProductSystem& x = *y.base.system;
  const ProductSystem& ysys = *y.system;
  const Elem eg = y.base.zs->G().identity();

  // (a) Commuting embedding squares into the lcm fiber.
  for (const Elem& pg : ysys.ball().elems) {
    const Elem& p = pg.first();
    for (const Elem& qh : ysys.ball().elems) {
      const Elem& q = qh.first();
      auto r = x.grading().lcm(p, q);
      if (!r.has_value() || !x.ball().contains(*r)) {
        report.add_skipped();
        continue;
      }
      Elem re = Elem::pair(*r, eg);
      const int m = x.fiber(p).dim();
      double worst = 0.0;
      for (int i = 0; i < m; ++i) {
        CVec ei = CVec::Zero(m);
        ei(i) = 1.0;
        for (int j = 0; j < m; ++j) {
          CVec ej = CVec::Zero(m);
          ej(j) = 1.0;
          CMat theta = x.fiber(p).rank_one(ei, ej);
          CMat via_base = x.embed_into(p, *r, theta);
          CMat via_joint = ysys.embed_into(pg, re, theta);
          worst = std::max(worst, max_abs_diff(via_base, via_joint));
        }
      }
      report.add_checked();
      if (worst > exact_tol) {
        report.add_violation("embedding-square",
                             pg.to_string() + "," + qh.to_string(), worst);
      }
    }
  }

  // (b) Residual agreement on matched tuples. The compacts sampled per
  // fiber are the diagonal rank-ones plus one off-diagonal, which spans
  // the slot geometry the residual depends on.
  auto sample = [](const Correspondence& f) {
    std::vector<CMat> out;
    const int m = f.dim();
    for (int i = 0; i < m; ++i) {
      CVec ei = CVec::Zero(m);
      ei(i) = 1.0;
      out.push_back(f.rank_one(ei, ei));
    }
    if (m > 1) {
      CVec e0 = CVec::Zero(m);
      e0(0) = 1.0;
      CVec e1 = CVec::Zero(m);
      e1(1) = 1.0;
      out.push_back(f.rank_one(e0, e1));
    }
    return out;
  };
  for (const Elem& pg : ysys.ball().elems) {
    const Elem& p = pg.first();
    for (const Elem& qh : ysys.ball().elems) {
      const Elem& q = qh.first();
      auto r = x.grading().lcm(p, q);
      if (r.has_value() && !x.ball().contains(*r)) {
        report.add_skipped();
        continue;
      }
      if (!joint.has_fiber(pg) || !joint.has_fiber(qh)) {
        report.add_skipped();
        continue;
      }
      double worst = 0.0;
      for (const CMat& s : sample(x.fiber(p))) {
        for (const CMat& t : sample(x.fiber(q))) {
          double res_joint = nica_residual(joint, pg, qh, s, t, tol.eps);
          double res_base = nica_residual(pair.psi, p, q, s, t, tol.eps);
          worst = std::max(worst, std::abs(res_joint - res_base));
        }
      }
      report.add_checked();
      if (worst > tol.eps) {
        report.add_violation("residual-agreement",
                             pg.to_string() + "," + qh.to_string(), worst);
      }
    }
  }
  return report;
}

}  // namespace zslab
