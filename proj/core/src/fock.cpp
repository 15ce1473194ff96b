#include "zslab/fock.hpp"

#include "zslab/errors.hpp"

namespace zslab {

CMat FockSpace::projector(const std::set<Elem>& safe) const {
  CMat p = CMat::Zero(total, total);
  for (const Elem& s : safe) {
    auto it = offset.find(s);
    if (it == offset.end()) continue;
    const int off = it->second;
    const int d = fiber_dim.at(s);
    p.block(off, off, d, d) = identity(d);
  }
  return p;
}

std::shared_ptr<const FockSpace> make_fock_space(const ProductSystem& x,
                                                 int fock_radius) {
  auto fock = std::make_shared<FockSpace>();
  fock->slots = x.grading().ball(fock_radius);
  for (const Elem& s : fock->slots.elems) {
    if (!x.ball().contains(s)) {
      throw ConstructionError("Fock ball exceeds the system ball at " +
                              s.to_string());
    }
    fock->offset[s] = fock->total;
    fock->fiber_dim[s] = x.fiber(s).dim();
    fock->total += x.fiber(s).dim();
  }
  return fock;
}

ToeplitzRep::ToeplitzRep(std::shared_ptr<const ProductSystem> system,
                         int space_dim, std::map<Elem, std::vector<CMat>> maps,
                         std::shared_ptr<const FockSpace> fock,
                         SlotFn slot_action, SlotFn slot_preimage)
    : system_(std::move(system)),
      space_dim_(space_dim),
      maps_(std::move(maps)),
      fock_(std::move(fock)),
      slot_action_(std::move(slot_action)),
      slot_preimage_(std::move(slot_preimage)) {
  for (const auto& [p, mats] : maps_) {
    if (static_cast<int>(mats.size()) != system_->fiber(p).dim()) {
      throw ConstructionError("fiber map count mismatch at " + p.to_string());
    }
    for (const CMat& m : mats) {
      if (m.rows() != space_dim_ || m.cols() != space_dim_) {
        throw ConstructionError("representation matrices must be N x N");
      }
    }
  }
}

const std::vector<CMat>& ToeplitzRep::fiber_maps(const Elem& p) const {
  auto it = maps_.find(p);
  if (it == maps_.end()) {
    throw WindowOverflowError("no representation maps at " + p.to_string());
  }
  return it->second;
}

CMat ToeplitzRep::apply(const Elem& p, const CVec& x) const {
  const auto& mats = fiber_maps(p);
  if (x.size() != static_cast<Eigen::Index>(mats.size())) {
    throw DimensionError("apply: coordinate count mismatch");
  }
  CMat out = CMat::Zero(space_dim_, space_dim_);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out += x(i) * mats[static_cast<std::size_t>(i)];
  }
  return out;
}

CMat ToeplitzRep::apply_e_ambient(const CMat& a) const {
  auto coords = system_->ambient_to_e(a);
  if (!coords.has_value()) {
    throw DomainError("element outside the coefficient span");
  }
  return apply(system_->grading().identity(), *coords);
}

const ToeplitzRep::RankOneSolver& ToeplitzRep::rank_one_solver(
    const Elem& p) const {
  auto it = rank_one_cache_.find(p);
  if (it != rank_one_cache_.end()) return it->second;
  const Correspondence& xp = system_->fiber(p);
  const int m = xp.dim();
  const auto& mats = fiber_maps(p);
  RankOneSolver solver;
  solver.stacked.resize(static_cast<Eigen::Index>(m) * m,
                        static_cast<Eigen::Index>(m) * m);
  solver.products.resize(static_cast<Eigen::Index>(space_dim_) * space_dim_,
                         static_cast<Eigen::Index>(m) * m);
  for (int i = 0; i < m; ++i) {
    CVec ei = CVec::Zero(m);
    ei(i) = 1.0;
    for (int j = 0; j < m; ++j) {
      CVec ej = CVec::Zero(m);
      ej(j) = 1.0;
      CMat theta = xp.rank_one(ei, ej);
      Eigen::Index col = static_cast<Eigen::Index>(i) * m + j;
      solver.stacked.col(col) =
          Eigen::Map<const CVec>(theta.data(), theta.size());
      CMat prod = mats[static_cast<std::size_t>(i)] *
                  mats[static_cast<std::size_t>(j)].adjoint();
      solver.products.col(col) =
          Eigen::Map<const CVec>(prod.data(), prod.size());
    }
  }
  solver.cod = solver.stacked.completeOrthogonalDecomposition();
  return rank_one_cache_.emplace(p, std::move(solver)).first->second;
}

CMat ToeplitzRep::psi_hat(const Elem& p, const CMat& s, double tol) const {
  const RankOneSolver& solver = rank_one_solver(p);
  CVec rhs = Eigen::Map<const CVec>(s.data(), s.size());
  CVec c = solver.cod.solve(rhs);
  if ((solver.stacked * c - rhs).cwiseAbs().maxCoeff() > tol) {
    throw DomainError("operator outside the compact span at " + p.to_string());
  }
  CVec out_vec = solver.products * c;
  return Eigen::Map<const CMat>(out_vec.data(), space_dim_, space_dim_);
}

std::optional<Elem> ToeplitzRep::slot_action(const Elem& fiber,
                                             const Elem& slot) const {
  if (!slot_action_) return std::nullopt;
  return slot_action_(fiber, slot);
}

CMat ToeplitzRep::safe_identity(const Elem& p) const {
  if (!fock_ || !slot_action_) return identity(space_dim_);
  std::set<Elem> safe;
  for (const Elem& s : fock_->slots.elems) {
    if (slot_action_(p, s).has_value()) safe.insert(s);
  }
  return fock_->projector(safe);
}

CMat ToeplitzRep::safe_mult(const Elem& p, const Elem& q) const {
  if (!fock_ || !slot_action_) return identity(space_dim_);
  std::set<Elem> safe;
  for (const Elem& s : fock_->slots.elems) {
    auto qs = slot_action_(q, s);
    if (!qs.has_value()) continue;
    if (slot_action_(p, *qs).has_value()) safe.insert(s);
  }
  return fock_->projector(safe);
}

CMat ToeplitzRep::safe_cp(const Elem& p) const {
  if (!fock_ || !slot_action_) return identity(space_dim_);
  std::set<Elem> safe;
  for (const Elem& t : fock_->slots.elems) {
    if (!slot_preimage_) {
      safe.insert(t);
      continue;
    }
    auto pre = slot_preimage_(p, t);
    if (!pre.has_value() || fock_->has(*pre)) safe.insert(t);
  }
  return fock_->projector(safe);
}

CMat ToeplitzRep::safe_all_of(const std::vector<Elem>& fibers) const {
  if (!fock_ || !slot_action_) return identity(space_dim_);
  std::set<Elem> safe;
  for (const Elem& s : fock_->slots.elems) {
    bool ok = true;
    for (const Elem& f : fibers) {
      if (!slot_action_(f, s).has_value()) {
        ok = false;
        break;
      }
    }
    if (ok) safe.insert(s);
  }
  return fock_->projector(safe);
}

const CMat& UnitaryRep::at(const Elem& g) const {
  auto it = mats.find(g);
  if (it == mats.end()) {
    throw WindowOverflowError("unitary " + g.to_string() +
                              " outside the group window");
  }
  return it->second;
}

ViolationReport UnitaryRep::validate(Tolerance tol) const {
  ViolationReport report("unitary-rep");
  report.add_checked();
  double id_res = max_abs_diff(at(group->identity()), identity(space_dim));
  if (id_res > tol.eps) report.add_violation("U-unit", "U_e", id_res);
  for (const auto& [g, m] : mats) {
    report.add_checked();
    double res = max_abs_diff(CMat(m.adjoint() * m), identity(space_dim));
    if (res > tol.eps) report.add_violation("U-unitary", g.to_string(), res);
  }
  for (const auto& [g, mg] : mats) {
    for (const auto& [h, mh] : mats) {
      Elem gh = group->multiply(g, h);
      if (!has(gh)) {
        report.add_skipped();
        continue;
      }
      report.add_checked();
      double res = max_abs_diff(CMat(mg * mh), at(gh));
      if (res > tol.eps) {
        report.add_violation("U-multiplicative",
                             g.to_string() + "," + h.to_string(), res);
      }
    }
  }
  return report;
}

ToeplitzRep build_fock_rep(std::shared_ptr<const ProductSystem> x,
                           int fock_radius) {
  auto fock = make_fock_space(*x, fock_radius);
  const int total = fock->total;
  std::map<Elem, std::vector<CMat>> maps;
  for (const Elem& p : x->ball().elems) {
    const int mp = x->fiber(p).dim();
    std::vector<CMat> mats(static_cast<std::size_t>(mp),
                           CMat(CMat::Zero(total, total)));
    for (const Elem& s : fock->slots.elems) {
      Elem ps = x->grading().multiply(p, s);
      if (!fock->has(ps) || !x->mult_defined(p, s)) continue;
      const CMat& m = x->mult_matrix(p, s);
      const int ms = fock->dim_of(s);
      for (int i = 0; i < mp; ++i) {
        CMat ei = CMat::Zero(mp, 1);
        ei(i, 0) = 1.0;
        mats[static_cast<std::size_t>(i)].block(fock->offset_of(ps),
                                                fock->offset_of(s),
                                                fock->dim_of(ps), ms) =
            m * kron(ei, identity(ms));
      }
    }
    maps.emplace(p, std::move(mats));
  }
  auto grading = x->grading_ptr();
  auto slot_act = [x, fock, grading](const Elem& p,
                                     const Elem& s) -> std::optional<Elem> {
    Elem ps = grading->multiply(p, s);
    if (!fock->has(ps)) return std::nullopt;
    return ps;
  };
  auto slot_pre = [grading](const Elem& p, const Elem& t) -> std::optional<Elem> {
    return grading->left_quotient(p, t);
  };
  return ToeplitzRep(x, total, std::move(maps), fock, slot_act, slot_pre);
}

UnitaryRep build_fock_unitary(const ZSSystem& s, int fock_radius) {
  auto fock = make_fock_space(*s.system, fock_radius);
  for (const Elem& slot : fock->slots.elems) {
    for (const Elem& g : s.gball.elems) {
      if (!fock->has(s.zs->act(g, slot))) {
        throw ConstructionError("Fock ball is not invariant: " +
                                g.to_string() + "." + slot.to_string() +
                                " leaves the ball");
      }
    }
  }
  UnitaryRep u;
  u.group = s.zs->G_ptr();
  u.domain = s.gball;
  u.space_dim = fock->total;
  for (const Elem& g : s.gball.elems) {
    CMat m = CMat::Zero(fock->total, fock->total);
    for (const Elem& slot : fock->slots.elems) {
      Elem gs = s.zs->act(g, slot);
      m.block(fock->offset_of(gs), fock->offset_of(slot), fock->dim_of(gs),
              fock->dim_of(slot)) = s.beta_matrix(g, slot);
    }
    u.mats.emplace(g, std::move(m));
  }
  return u;
}

ViolationReport validate_toeplitz(const ToeplitzRep& rep, Tolerance tol) {
  ViolationReport report("toeplitz");
  const ProductSystem& x = rep.system();
  const Elem e = x.grading().identity();
  const Correspondence& xe = x.fiber(e);

  // psi_e is a *-homomorphism of the identity fiber algebra.
  for (int i = 0; i < xe.dim(); ++i) {
    CVec ei = CVec::Zero(xe.dim());
    ei(i) = 1.0;
    CMat amb_i = x.e_to_ambient(ei);
    report.add_checked();
    double star_res =
        max_abs_diff(CMat(rep.apply(e, ei).adjoint()),
                     rep.apply_e_ambient(CMat(amb_i.adjoint())));
    if (star_res > tol.eps) {
      report.add_violation("psi-e-star", "e" + std::to_string(i), star_res);
    }
    for (int j = 0; j < xe.dim(); ++j) {
      CVec ej = CVec::Zero(xe.dim());
      ej(j) = 1.0;
      report.add_checked();
      CMat lhs = rep.apply(e, ei) * rep.apply(e, ej);
      CMat rhs = rep.apply_e_ambient(CMat(amb_i * x.e_to_ambient(ej)));
      double res = max_abs_diff(lhs, rhs);
      if (res > tol.eps) {
        report.add_violation("psi-e-multiplicative",
                             "e" + std::to_string(i) + ",e" + std::to_string(j),
                             res);
      }
    }
  }

  // Inner-product identity on the safe domain.
  for (const auto& [p, mats] : rep.maps()) {
    const Correspondence& xp = x.fiber(p);
    CMat safe = rep.safe_identity(p);
    double worst = 0.0;
    for (int i = 0; i < xp.dim(); ++i) {
      for (int j = 0; j < xp.dim(); ++j) {
        CMat lhs = mats[static_cast<std::size_t>(i)].adjoint() *
                   mats[static_cast<std::size_t>(j)];
        CMat rhs = rep.apply_e_ambient(xp.inner_basis(i, j));
        worst = std::max(worst, max_abs(CMat((lhs - rhs) * safe)));
      }
    }
    report.add_checked();
    if (worst > tol.eps) {
      report.add_violation("inner-identity", p.to_string(), worst);
    }
  }

  // Multiplicativity on the safe domain.
  for (const auto& [p, pmats] : rep.maps()) {
    for (const auto& [q, qmats] : rep.maps()) {
      Elem pq = x.grading().multiply(p, q);
      if (!rep.has_fiber(pq) || !x.mult_defined(p, q)) {
        report.add_skipped();
        continue;
      }
      CMat safe = rep.safe_mult(p, q);
      const int mp = x.fiber(p).dim();
      const int mq = x.fiber(q).dim();
      double worst = 0.0;
      for (int i = 0; i < mp; ++i) {
        CVec ei = CVec::Zero(mp);
        ei(i) = 1.0;
        for (int j = 0; j < mq; ++j) {
          CVec ej = CVec::Zero(mq);
          ej(j) = 1.0;
          CMat lhs = pmats[static_cast<std::size_t>(i)] *
                     qmats[static_cast<std::size_t>(j)];
          CMat rhs = rep.apply(pq, x.multiply(p, q, ei, ej));
          worst = std::max(worst, max_abs(CMat((lhs - rhs) * safe)));
        }
      }
      report.add_checked();
      if (worst > tol.eps) {
        report.add_violation("multiplicativity",
                             "(" + p.to_string() + "," + q.to_string() + ")",
                             worst);
      }
    }
  }
  return report;
}

ViolationReport validate_covariance(const ToeplitzRep& psi, const UnitaryRep& u,
                                    const ZSSystem& s, Tolerance tol) {
  ViolationReport report("covariance");
  if (psi.space_dim() != u.space_dim) {
    report.add_violation("covariance", "space dimensions differ", 1.0);
    return report;
  }
  for (const Elem& g : u.domain.elems) {
    for (const auto& [p, mats] : psi.maps()) {
      Elem gp = s.zs->act(g, p);
      Elem g_res = s.zs->restriction(g, p);
      if (!psi.has_fiber(gp) || !u.has(g_res)) {
        report.add_skipped();
        continue;
      }
      CMat safe = psi.safe_identity(p);
      const CMat& beta = s.beta_matrix(g, p);
      double worst = 0.0;
      for (std::size_t i = 0; i < mats.size(); ++i) {
        CMat lhs = u.at(g) * mats[i];
        CMat rhs = psi.apply(gp, beta.col(static_cast<Eigen::Index>(i))) *
                   u.at(g_res);
        worst = std::max(worst, max_abs(CMat((lhs - rhs) * safe)));
      }
      report.add_checked();
      if (worst > tol.eps) {
        report.add_violation("covariance",
                             "(" + g.to_string() + "," + p.to_string() + ")",
                             worst);
      }
    }
  }
  return report;
}

}  // namespace zslab
