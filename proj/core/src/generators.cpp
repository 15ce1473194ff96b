#include "zslab/generators.hpp"

#include "zslab/errors.hpp"

namespace zslab {

ZSSystem trivial_system(std::shared_ptr<const ZSData> zs, int radius_p,
                        int radius_g) {
  auto algebra = MatrixStarAlgebra::scalars();
  auto grading = zs->P_ptr();
  Ball ball = grading->ball(radius_p);

  ProductSystem::Data data;
  data.grading = grading;
  data.ball = ball;
  data.coeff = algebra;
  data.e_basis = {identity(1)};

  std::vector<std::vector<CMat>> inner(1);
  inner[0].push_back(identity(1));
  for (const Elem& p : ball.elems) {
    data.fibers.emplace(
        p, Correspondence(algebra, inner, {identity(1)}, {identity(1)}));
  }
  for (const Elem& p : ball.elems) {
    for (const Elem& q : ball.elems) {
      if (!ball.contains(grading->multiply(p, q))) continue;
      data.mult.emplace(std::make_pair(p, q), identity(1));
    }
  }

  ZSSystem out;
  out.system = std::make_shared<ProductSystem>(std::move(data));
  out.zs = zs;
  out.beta = std::make_shared<ZSAction>(
      [](const Elem&, const Elem&) { return identity(1); });
  out.gball = zs->G().ball(radius_g);
  return out;
}

std::shared_ptr<const ProductSystem> kgraph_system(
    std::shared_ptr<const KGraph> graph, int radius,
    VertexConvention convention) {
  const int nv = graph->num_vertices();
  auto algebra = MatrixStarAlgebra::diagonal(nv);
  auto grading = make_nk_semigroup(graph->rank());
  Ball ball = grading->ball(radius);

  ProductSystem::Data data;
  data.grading = grading;
  data.ball = ball;
  data.coeff = algebra;

  for (const Elem& p : ball.elems) {
    const auto& morphs = graph->morphisms(p.as_vec());
    const int m = static_cast<int>(morphs.size());
    if (m == 0) {
      throw ConstructionError(
          "no morphisms of degree " + p.to_string() +
          "; complete the graph or shrink the radius");
    }
    std::vector<std::vector<CMat>> inner(
        static_cast<std::size_t>(m),
        std::vector<CMat>(static_cast<std::size_t>(m),
                          CMat(CMat::Zero(nv, nv))));
    for (int i = 0; i < m; ++i) {
      int v = convention == VertexConvention::kSource
                  ? graph->source_of(morphs[static_cast<std::size_t>(i)])
                  : graph->range_of(morphs[static_cast<std::size_t>(i)]);
      inner[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
          unit_matrix(nv, nv, v, v);
    }
    std::vector<CMat> left, right;
    for (int k = 0; k < nv; ++k) {
      CMat lm = CMat::Zero(m, m);
      CMat rm = CMat::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        if (graph->range_of(morphs[static_cast<std::size_t>(i)]) == k) {
          lm(i, i) = 1.0;
        }
        if (graph->source_of(morphs[static_cast<std::size_t>(i)]) == k) {
          rm(i, i) = 1.0;
        }
      }
      left.push_back(std::move(lm));
      right.push_back(std::move(rm));
    }
    data.fibers.emplace(p, Correspondence(algebra, std::move(inner),
                                          std::move(left), std::move(right)));
    if (grading->length(p) == 0) {
      for (int i = 0; i < m; ++i) {
        int v = morphs[static_cast<std::size_t>(i)].vertex;
        data.e_basis.push_back(unit_matrix(nv, nv, v, v));
      }
    }
  }

  for (const Elem& p : ball.elems) {
    const auto& mp = graph->morphisms(p.as_vec());
    for (const Elem& q : ball.elems) {
      Elem pq = grading->multiply(p, q);
      if (!ball.contains(pq)) continue;
      const auto& mq = graph->morphisms(q.as_vec());
      const auto& mpq = graph->morphisms(pq.as_vec());
      CMat mult = CMat::Zero(static_cast<Eigen::Index>(mpq.size()),
                             static_cast<Eigen::Index>(mp.size() * mq.size()));
      for (std::size_t i = 0; i < mp.size(); ++i) {
        for (std::size_t j = 0; j < mq.size(); ++j) {
          if (graph->source_of(mp[i]) != graph->range_of(mq[j])) continue;
          KGraph::Path comp = graph->compose(mp[i], mq[j]);
          mult(graph->index_of(comp),
               static_cast<Eigen::Index>(i * mq.size() + j)) = 1.0;
        }
      }
      data.mult.emplace(std::make_pair(p, q), std::move(mult));
    }
  }
  return std::make_shared<ProductSystem>(std::move(data));
}

ZSSystem selfsimilar_beta(std::shared_ptr<const SelfSimilarAction> action,
                          int radius_p, int radius_g,
                          VertexConvention convention) {
  std::string witness;
  if (!action->restriction_uniform(radius_p, &witness)) {
    throw ConstructionError(
        "restriction is not constant on degrees: " + witness);
  }
  auto graph = action->graph_ptr();
  auto system = kgraph_system(graph, radius_p, convention);
  auto group = action->group_ptr();

  auto zs = std::make_shared<ZSData>(
      system->grading_ptr(), group,
      [](const Elem&, const Elem& p) { return p; },
      [action, graph](const Elem& g, const Elem& p) {
        const auto& morphs = graph->morphisms(p.as_vec());
        if (morphs.empty()) {
          throw DomainError("no morphisms of degree " + p.to_string());
        }
        return action->restrict_path(g, morphs.front());
      },
      "builtin(self-similar)");

  auto beta = std::make_shared<ZSAction>(
      [action, graph](const Elem& g, const Elem& p) {
        const auto& morphs = graph->morphisms(p.as_vec());
        const int m = static_cast<int>(morphs.size());
        CMat out = CMat::Zero(m, m);
        for (int i = 0; i < m; ++i) {
          KGraph::Path img =
              action->act_path(g, morphs[static_cast<std::size_t>(i)]);
          out(graph->index_of(img), i) = 1.0;
        }
        return out;
      });

  ZSSystem out;
  out.system = system;
  out.zs = zs;
  out.beta = beta;
  out.gball = group->ball(radius_g);
  return out;
}

TildeSystem calE_system(std::shared_ptr<const SelfSimilarAction> action,
                        int radius_p) {
  std::string witness;
  if (!action->restriction_uniform(radius_p, &witness)) {
    throw ConstructionError(
        "restriction is not constant on degrees: " + witness);
  }
  auto graph = action->graph_ptr();
  auto group = action->group_ptr();
  if (!group->finite()) {
    throw UnsupportedStructureError("construction requires a finite group");
  }
  const int nv = graph->num_vertices();
  auto coeff = MatrixStarAlgebra::diagonal(nv);

  // Vertex permutation action on the diagonal algebra.
  auto vertex_action = [action, nv, coeff](const Elem& g) {
    AlgebraMap f;
    for (int v = 0; v < nv; ++v) {
      f.images.push_back(unit_matrix(nv, nv, action->act_vertex(g, v),
                                     action->act_vertex(g, v)));
    }
    return f;
  };
  auto crossed = build_crossed_product(coeff, group, vertex_action);

  auto grading = make_nk_semigroup(graph->rank());
  Ball ball = grading->ball(radius_p);
  const std::vector<Elem>& gs = crossed->group_elements();
  const int ng = static_cast<int>(gs.size());

  ProductSystem::Data data;
  data.grading = grading;
  data.ball = ball;
  data.coeff = crossed->algebra_ptr();

  for (const Elem& p : ball.elems) {
    const auto& morphs = graph->morphisms(p.as_vec());
    const int m = static_cast<int>(morphs.size());
    if (m == 0) {
      throw ConstructionError("no morphisms of degree " + p.to_string());
    }
    const int mz = m * ng;
    if (grading->length(p) == 0) {
      for (int gi = 0; gi < ng; ++gi) {
        for (int i = 0; i < m; ++i) {
          int v = morphs[static_cast<std::size_t>(i)].vertex;
          data.e_basis.push_back(crossed->pi(unit_matrix(nv, nv, v, v)) *
                                 crossed->u(gs[static_cast<std::size_t>(gi)]));
        }
      }
    }
    std::vector<std::vector<CMat>> inner(
        static_cast<std::size_t>(mz),
        std::vector<CMat>(static_cast<std::size_t>(mz)));
    for (int gi = 0; gi < ng; ++gi) {
      const Elem& g = gs[static_cast<std::size_t>(gi)];
      Elem g_inv = group->inverse(g);
      for (int hi = 0; hi < ng; ++hi) {
        const Elem& h = gs[static_cast<std::size_t>(hi)];
        for (int i = 0; i < mz / ng; ++i) {
          for (int j = 0; j < mz / ng; ++j) {
            // u_{g^{-1}} <chi_mu, chi_nu> u_h.
            CMat val = CMat::Zero(crossed->algebra().ambient_dim(),
                                  crossed->algebra().ambient_dim());
            if (i == j) {
              int v = graph->source_of(morphs[static_cast<std::size_t>(i)]);
              val = crossed->u(g_inv) * crossed->pi(unit_matrix(nv, nv, v, v)) *
                    crossed->u(h);
            }
            inner[static_cast<std::size_t>(gi * m + i)]
                 [static_cast<std::size_t>(hi * m + j)] = val;
          }
        }
      }
    }
    std::vector<CMat> left, right;
    for (int ti = 0; ti < ng; ++ti) {
      const Elem& t = gs[static_cast<std::size_t>(ti)];
      for (int v = 0; v < nv; ++v) {
        CMat lm = CMat::Zero(mz, mz);
        CMat rm = CMat::Zero(mz, mz);
        for (int gi = 0; gi < ng; ++gi) {
          const Elem& g = gs[static_cast<std::size_t>(gi)];
          for (int i = 0; i < m; ++i) {
            const KGraph::Path& mu = morphs[static_cast<std::size_t>(i)];
            // (chi_v u_t).(chi_mu u_g) = [v = t.r(mu)] chi_{t.mu} u_{t|_mu g}
            if (action->act_vertex(t, graph->range_of(mu)) == v) {
              KGraph::Path img = action->act_path(t, mu);
              Elem res = action->restrict_path(t, mu);
              int out_g = crossed->group_index(group->multiply(res, g));
              lm(out_g * m + graph->index_of(img), gi * m + i) = 1.0;
            }
            // (chi_mu u_g).(chi_v u_t) = [s(mu) = g.v] chi_mu u_{g t}
            if (action->act_vertex(g, v) == graph->source_of(mu)) {
              int out_g = crossed->group_index(group->multiply(g, t));
              rm(out_g * m + i, gi * m + i) = 1.0;
            }
          }
        }
        left.push_back(std::move(lm));
        right.push_back(std::move(rm));
      }
    }
    data.fibers.emplace(p, Correspondence(crossed->algebra_ptr(),
                                          std::move(inner), std::move(left),
                                          std::move(right)));
  }

  for (const Elem& p : ball.elems) {
    const auto& mp = graph->morphisms(p.as_vec());
    for (const Elem& q : ball.elems) {
      Elem pq = grading->multiply(p, q);
      if (!ball.contains(pq)) continue;
      const auto& mq = graph->morphisms(q.as_vec());
      const auto& mpq = graph->morphisms(pq.as_vec());
      const int dim_p = static_cast<int>(mp.size()) * ng;
      const int dim_q = static_cast<int>(mq.size()) * ng;
      CMat mult = CMat::Zero(static_cast<Eigen::Index>(mpq.size()) * ng,
                             static_cast<Eigen::Index>(dim_p) * dim_q);
      for (int gi = 0; gi < ng; ++gi) {
        const Elem& g = gs[static_cast<std::size_t>(gi)];
        for (int hi = 0; hi < ng; ++hi) {
          const Elem& h = gs[static_cast<std::size_t>(hi)];
          for (std::size_t i = 0; i < mp.size(); ++i) {
            for (std::size_t j = 0; j < mq.size(); ++j) {
              // (chi_mu u_g)(chi_nu u_h) =
              //   [s(mu) = r(g.nu)] chi_{mu (g.nu)} u_{g|_nu h}.
              KGraph::Path gnu = action->act_path(g, mq[j]);
              if (graph->source_of(mp[i]) != graph->range_of(gnu)) continue;
              Elem res = action->restrict_path(g, mq[j]);
              int out_g = crossed->group_index(group->multiply(res, h));
              KGraph::Path comp = graph->compose(mp[i], gnu);
              Eigen::Index col =
                  (static_cast<Eigen::Index>(gi) * static_cast<Eigen::Index>(
                                                       mp.size()) +
                   static_cast<Eigen::Index>(i)) *
                      dim_q +
                  static_cast<Eigen::Index>(hi) *
                      static_cast<Eigen::Index>(mq.size()) +
                  static_cast<Eigen::Index>(j);
              mult(static_cast<Eigen::Index>(out_g) *
                           static_cast<Eigen::Index>(mpq.size()) +
                       graph->index_of(comp),
                   col) = 1.0;
            }
          }
        }
      }
      data.mult.emplace(std::make_pair(p, q), std::move(mult));
    }
  }

  TildeSystem out;
  out.system = std::make_shared<ProductSystem>(std::move(data));
  out.crossed = crossed;
  // The underlying homogeneous system, for reference by callers.
  out.base = selfsimilar_beta(action, radius_p, 1);
  return out;
}

std::shared_ptr<const ZSData> odometer_zs(int check_radius_p,
                                          int check_radius_g) {
  auto p = make_free_monoid("01");
  auto g = make_free_abelian_group(1);
  Elem a = Elem::vec({1});
  Elem e = Elem::vec({0});
  std::vector<LetterRule> rules = {
      {a, '0', '1', e},
      {a, '1', '0', a},
  };
  return extend_action_from_generators(p, g, rules, check_radius_p,
                                       check_radius_g);
}

std::shared_ptr<const ZSData> coordinate_swap_zs() {
  auto p = make_nk_semigroup(2);
  auto g = make_cyclic_group(2);
  Elem swap = Elem::index(1);
  return std::make_shared<ZSData>(
      p, g,
      [swap](const Elem& h, const Elem& q) {
        if (h != swap) return q;
        const auto& v = q.as_vec();
        return Elem::vec({v[1], v[0]});
      },
      [](const Elem& h, const Elem&) { return h; }, "builtin(coordinate-swap)");
}

ZSSystem diagonal_pair_system(int radius_p) {
  auto algebra = MatrixStarAlgebra::diagonal(2);
  auto grading = make_nk_semigroup(1);
  auto group = make_cyclic_group(2);
  Ball ball = grading->ball(radius_p);

  ProductSystem::Data data;
  data.grading = grading;
  data.ball = ball;
  data.coeff = algebra;
  data.e_basis = {unit_matrix(2, 2, 0, 0), unit_matrix(2, 2, 1, 1)};

  // Coordinatewise correspondence structure in every fiber.
  std::vector<std::vector<CMat>> inner(2);
  inner[0] = {unit_matrix(2, 2, 0, 0), CMat(CMat::Zero(2, 2))};
  inner[1] = {CMat(CMat::Zero(2, 2)), unit_matrix(2, 2, 1, 1)};
  std::vector<CMat> act = {unit_matrix(2, 2, 0, 0), unit_matrix(2, 2, 1, 1)};
  for (const Elem& p : ball.elems) {
    data.fibers.emplace(p, Correspondence(algebra, inner, act, act));
  }
  CMat mult = CMat::Zero(2, 4);
  mult(0, 0) = 1.0;  // e0 (x) e0 -> e0
  mult(1, 3) = 1.0;  // e1 (x) e1 -> e1
  for (const Elem& p : ball.elems) {
    for (const Elem& q : ball.elems) {
      if (!ball.contains(grading->multiply(p, q))) continue;
      data.mult.emplace(std::make_pair(p, q), mult);
    }
  }

  ZSSystem out;
  out.system = std::make_shared<ProductSystem>(std::move(data));
  out.zs = ZSData::trivial(grading, group);
  Elem swap = Elem::index(1);
  out.beta = std::make_shared<ZSAction>([swap](const Elem& g, const Elem&) {
    CMat m = CMat::Zero(2, 2);
    if (g == swap) {
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
    } else {
      m = identity(2);
    }
    return m;
  });
  out.gball = group->ball(1);
  return out;
}

ViolationReport compare_product_systems(const ProductSystem& a,
                                        const ProductSystem& b,
                                        double exact_tol) {
  ViolationReport report("system-comparison");
  if (a.ball().elems != b.ball().elems) {
    report.add_violation("ball", "ball element lists differ", 1.0);
    return report;
  }
  report.add_checked();
  if (a.coeff().ambient_dim() != b.coeff().ambient_dim() ||
      a.coeff().dim() != b.coeff().dim()) {
    report.add_violation("coefficients", "algebra shapes differ", 1.0);
    return report;
  }
  for (std::size_t i = 0; i < a.e_basis().size(); ++i) {
    report.add_checked();
    double res = max_abs_diff(a.e_basis()[i], b.e_basis()[i]);
    if (res > exact_tol) {
      report.add_violation("e-basis", "index " + std::to_string(i), res);
    }
  }
  for (const Elem& p : a.ball().elems) {
    const Correspondence& fa = a.fiber(p);
    const Correspondence& fb = b.fiber(p);
    report.add_checked();
    if (fa.dim() != fb.dim()) {
      report.add_violation("fiber-dim", p.to_string(), 1.0);
      continue;
    }
    double worst = 0.0;
    for (int i = 0; i < fa.dim(); ++i) {
      for (int j = 0; j < fa.dim(); ++j) {
        worst = std::max(worst,
                         max_abs_diff(fa.inner_basis(i, j), fb.inner_basis(i, j)));
      }
    }
    for (int k = 0; k < a.coeff().dim(); ++k) {
      const CMat& bk = a.coeff().basis()[static_cast<std::size_t>(k)];
      worst = std::max(worst, max_abs_diff(fa.left_matrix(bk), fb.left_matrix(bk)));
      worst = std::max(worst, max_abs_diff(fa.right_matrix(bk), fb.right_matrix(bk)));
    }
    report.add_checked();
    if (worst > exact_tol) {
      report.add_violation("fiber-structure", p.to_string(), worst);
    }
  }
  for (const Elem& p : a.ball().elems) {
    for (const Elem& q : a.ball().elems) {
      if (!a.mult_defined(p, q) && !b.mult_defined(p, q)) continue;
      report.add_checked();
      if (a.mult_defined(p, q) != b.mult_defined(p, q)) {
        report.add_violation("mult-domain",
                             "(" + p.to_string() + "," + q.to_string() + ")",
                             1.0);
        continue;
      }
      double res = max_abs_diff(a.mult_matrix(p, q), b.mult_matrix(p, q));
      if (res > exact_tol) {
        report.add_violation("mult",
                             "(" + p.to_string() + "," + q.to_string() + ")",
                             res);
      }
    }
  }
  return report;
}

}  // namespace zslab
