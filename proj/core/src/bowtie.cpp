#include "zslab/bowtie.hpp"

#include "zslab/errors.hpp"

namespace zslab {

BowtieSystem build_bowtie(const ZSSystem& s, bool assume_valid) {
  if (!assume_valid) {
    ViolationReport check = validate_zs_action(s);
    if (!check.ok()) {
      throw ConstructionError("Zappa-Szep action invalid: " + check.summary());
    }
  }
  const ProductSystem& x = *s.system;
  const ZSData& zs = *s.zs;
  const Ball& pball = x.ball();
  const Ball& gball = s.gball;

  ProductSystem::Data data;
  data.grading = make_bowtie_semigroup(s.zs);
  data.ball = bowtie_ball(pball, gball);
  data.coeff = x.coeff_ptr();
  data.e_basis = x.e_basis();

  const int n = x.coeff().dim();
  for (const Elem& p : pball.elems) {
    const Correspondence& xp = x.fiber(p);
    const int m = xp.dim();
    for (const Elem& g : gball.elems) {
      Elem g_inv = zs.G().inverse(g);
      // Inner product twisted through beta_{g^{-1}}; left action unchanged;
      // right action through beta_g.
      std::vector<std::vector<CMat>> inner(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          inner[static_cast<std::size_t>(i)].push_back(
              s.beta_ambient(g_inv, xp.inner_basis(i, j)));
        }
      }
      std::vector<CMat> left, right;
      for (int k = 0; k < n; ++k) {
        const CMat& b = x.coeff().basis()[static_cast<std::size_t>(k)];
        left.push_back(xp.left_matrix(b));
        right.push_back(xp.right_matrix(s.beta_ambient(g, b)));
      }
      data.fibers.emplace(
          Elem::pair(p, g),
          Correspondence(x.coeff_ptr(), std::move(inner), std::move(left),
                         std::move(right)));
    }
  }

  for (const Elem& p : pball.elems) {
    for (const Elem& g : gball.elems) {
      for (const Elem& q : pball.elems) {
        Elem gq = zs.act(g, q);
        if (!pball.contains(gq)) continue;
        Elem target_p = x.grading().multiply(p, gq);
        if (!pball.contains(target_p) || !x.mult_defined(p, gq)) continue;
        const CMat& base_mult = x.mult_matrix(p, gq);
        const CMat& beta_q = s.beta_matrix(g, q);
        for (const Elem& h : gball.elems) {
          Elem target_g = zs.G().multiply(zs.restriction(g, q), h);
          if (!gball.contains(target_g)) continue;
          // (x (x) g)(y (x) h) = x beta_g(y) (x) g|_q h.
          const int mp = x.fiber(p).dim();
          CMat m = base_mult * kron(identity(mp), beta_q);
          data.mult.emplace(
              std::make_pair(Elem::pair(p, g), Elem::pair(q, h)), std::move(m));
        }
      }
    }
  }

  BowtieSystem out;
  out.system = std::make_shared<ProductSystem>(std::move(data));
  out.base = s;
  return out;
}

int TildeSystem::fiber_index(const Elem& p, int vec_index,
                             int group_index) const {
  const int m = base.system->fiber(p).dim();
  return group_index * m + vec_index;
}

TildeSystem build_tilde_bowtie(const ZSSystem& s, bool assume_valid) {
  if (!is_homogeneous(s)) {
    throw ConstructionError(
        "homogeneous product requires g.p = p on the window");
  }
  if (!s.zs->G().finite()) {
    throw UnsupportedStructureError(
        "homogeneous product requires a finite group");
  }
  if (!assume_valid) {
    ViolationReport check = validate_zs_action(s);
    if (!check.ok()) {
      throw ConstructionError("Zappa-Szep action invalid: " + check.summary());
    }
  }

  const ProductSystem& x = *s.system;
  const ZSData& zs = *s.zs;
  const Ball& pball = x.ball();
  const Elem ep = x.grading().identity();

  auto crossed = build_crossed_product(
      x.coeff_ptr(), s.zs->G_ptr(),
      [&s](const Elem& g) { return s.beta_on_algebra(g); });

  const std::vector<Elem>& gs = crossed->group_elements();
  const int ng = static_cast<int>(gs.size());
  const int n = x.coeff().dim();

  ProductSystem::Data data;
  data.grading = x.grading_ptr();
  data.ball = pball;
  data.coeff = crossed->algebra_ptr();

  // Z_e = crossed product via a (x) g -> a u_g.
  const Correspondence& xe = x.fiber(ep);
  for (int gi = 0; gi < ng; ++gi) {
    for (int i = 0; i < xe.dim(); ++i) {
      CVec ei = CVec::Zero(xe.dim());
      ei(i) = 1.0;
      data.e_basis.push_back(crossed->pi(x.e_to_ambient(ei)) * crossed->u(gs[static_cast<std::size_t>(gi)]));
    }
  }

  // Fibers Z_p with carrier X_p (x) C[G], group-major index g*m_p + i.
  for (const Elem& p : pball.elems) {
    const Correspondence& xp = x.fiber(p);
    const int m = xp.dim();
    const int mz = m * ng;
    std::vector<std::vector<CMat>> inner(
        static_cast<std::size_t>(mz),
        std::vector<CMat>(static_cast<std::size_t>(mz)));
    for (int gi = 0; gi < ng; ++gi) {
      const Elem& g = gs[static_cast<std::size_t>(gi)];
      Elem g_inv = zs.G().inverse(g);
      for (int hi = 0; hi < ng; ++hi) {
        const Elem& h = gs[static_cast<std::size_t>(hi)];
        const CMat& lam = crossed->u(zs.G().multiply(g_inv, h));
        for (int i = 0; i < m; ++i) {
          for (int j = 0; j < m; ++j) {
            // <x (x) g, y (x) h> = beta_{g^{-1}}(<x,y>) u_{g^{-1} h}.
            inner[static_cast<std::size_t>(gi * m + i)]
                 [static_cast<std::size_t>(hi * m + j)] =
                     crossed->pi(s.beta_ambient(g_inv, xp.inner_basis(i, j))) *
                     lam;
          }
        }
      }
    }
    // Actions of the crossed-product basis pi(b_k) u_t.
    std::vector<CMat> left, right;
    for (int ti = 0; ti < ng; ++ti) {
      const Elem& t = gs[static_cast<std::size_t>(ti)];
      Elem t_res = zs.restriction(t, p);
      const CMat& beta_t = s.beta_matrix(t, p);
      for (int k = 0; k < n; ++k) {
        const CMat& b = x.coeff().basis()[static_cast<std::size_t>(k)];
        CMat lm = CMat::Zero(mz, mz);
        CMat rm = CMat::Zero(mz, mz);
        for (int gi = 0; gi < ng; ++gi) {
          const Elem& g = gs[static_cast<std::size_t>(gi)];
          // (b u_t).(x (x) g) = b beta_t(x) (x) t|_p g.
          int lg = crossed->group_index(zs.G().multiply(t_res, g));
          lm.block(static_cast<Eigen::Index>(lg) * m,
                   static_cast<Eigen::Index>(gi) * m, m, m) =
              xp.left_matrix(b) * beta_t;
          // (x (x) g).(b u_t) = x beta_g(b) (x) g t.
          int rg = crossed->group_index(zs.G().multiply(g, t));
          rm.block(static_cast<Eigen::Index>(rg) * m,
                   static_cast<Eigen::Index>(gi) * m, m, m) =
              xp.right_matrix(s.beta_ambient(g, b));
        }
        left.push_back(std::move(lm));
        right.push_back(std::move(rm));
      }
    }
    data.fibers.emplace(p, Correspondence(crossed->algebra_ptr(),
                                          std::move(inner), std::move(left),
                                          std::move(right)));
  }

  // Multiplications: (x (x) g, y (x) h) -> x beta_g(y) (x) g|_q h.
  for (const Elem& p : pball.elems) {
    const int mp = x.fiber(p).dim();
    for (const Elem& q : pball.elems) {
      Elem pq = x.grading().multiply(p, q);
      if (!pball.contains(pq) || !x.mult_defined(p, q)) continue;
      const int mq = x.fiber(q).dim();
      const int mpq = x.fiber(pq).dim();
      const CMat& base_mult = x.mult_matrix(p, q);
      CMat m = CMat::Zero(static_cast<Eigen::Index>(mpq) * ng,
                          static_cast<Eigen::Index>(mp) * ng *
                              static_cast<Eigen::Index>(mq) * ng);
      for (int gi = 0; gi < ng; ++gi) {
        const Elem& g = gs[static_cast<std::size_t>(gi)];
        const CMat& beta_g_q = s.beta_matrix(g, q);
        int out_gi_base = crossed->group_index(zs.restriction(g, q));
        for (int hi = 0; hi < ng; ++hi) {
          const Elem& h = gs[static_cast<std::size_t>(hi)];
          int out_g = crossed->group_index(zs.G().multiply(
              gs[static_cast<std::size_t>(out_gi_base)], h));
          for (int i = 0; i < mp; ++i) {
            CVec ei = CVec::Zero(mp);
            ei(i) = 1.0;
            for (int j = 0; j < mq; ++j) {
              Eigen::Index col =
                  (static_cast<Eigen::Index>(gi) * mp + i) *
                      (static_cast<Eigen::Index>(mq) * ng) +
                  static_cast<Eigen::Index>(hi) * mq + j;
              CVec prod = base_mult * kron_vec(ei, CVec(beta_g_q.col(j)));
              m.block(static_cast<Eigen::Index>(out_g) * mpq, col, mpq, 1) =
                  prod;
            }
          }
        }
      }
      data.mult.emplace(std::make_pair(p, q), std::move(m));
    }
  }

  TildeSystem out;
  out.system = std::make_shared<ProductSystem>(std::move(data));
  out.crossed = crossed;
  out.base = s;
  return out;
}

}  // namespace zslab
