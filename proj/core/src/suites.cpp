#include "zslab/suites.hpp"

#include <chrono>
#include <optional>

#include "json.hpp"
#include "zslab/errors.hpp"
#include "zslab/generators.hpp"
#include "zslab/representations.hpp"

namespace zslab {

namespace {

using json = nlohmann::ordered_json;

struct NamedSemigroup {
  std::shared_ptr<const Semigroup> sg;
  std::map<std::string, Elem> names;
};

struct NamedGroup {
  std::shared_ptr<const Group> group;
  std::map<std::string, Elem> names;
};

NamedSemigroup build_semigroup(const ConfigSection& s) {
  NamedSemigroup out;
  const std::string& kind = s.at("kind").as_name();
  if (kind == "nk") {
    out.sg = make_nk_semigroup(static_cast<int>(s.at("rank").as_int()));
  } else if (kind == "free_monoid") {
    out.sg = make_free_monoid(s.at("alphabet").as_name());
  } else if (kind == "table") {
    std::vector<std::string> names;
    for (const auto& v : s.at("elements").as_list()) {
      names.push_back(v.as_name());
    }
    auto index_of = [&names, &s](const std::string& n) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == n) return static_cast<int>(i);
      }
      throw ConfigError("unknown element '" + n + "'", s.line);
    };
    std::vector<std::vector<int>> table;
    for (const auto& row : s.at("products").as_list()) {
      std::vector<int> r;
      for (const auto& v : row.as_list()) r.push_back(index_of(v.as_name()));
      table.push_back(std::move(r));
    }
    int id = index_of(s.at("identity").as_name());
    out.sg = make_table_semigroup(std::move(table), id, names);
    for (std::size_t i = 0; i < names.size(); ++i) {
      out.names.emplace(names[i], Elem::index(static_cast<int>(i)));
    }
  } else {
    throw ConfigError("unknown semigroup kind '" + kind + "'", s.line);
  }
  return out;
}

NamedGroup build_group(const ConfigSection& s) {
  NamedGroup out;
  const std::string& kind = s.at("kind").as_name();
  if (kind == "free_abelian") {
    out.group = make_free_abelian_group(static_cast<int>(s.at("rank").as_int()));
  } else if (kind == "trivial") {
    out.group = make_trivial_group();
    out.names.emplace("e", Elem::index(0));
  } else if (kind == "cyclic") {
    int order = static_cast<int>(s.at("order").as_int());
    out.group = make_cyclic_group(order);
    out.names.emplace("e", Elem::index(0));
    if (order > 1) out.names.emplace("g", Elem::index(1));
    for (int k = 2; k < order; ++k) {
      out.names.emplace("g^" + std::to_string(k), Elem::index(k));
    }
  } else if (kind == "table") {
    std::vector<std::string> names;
    for (const auto& v : s.at("elements").as_list()) {
      names.push_back(v.as_name());
    }
    auto index_of = [&names, &s](const std::string& n) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == n) return static_cast<int>(i);
      }
      throw ConfigError("unknown element '" + n + "'", s.line);
    };
    std::vector<std::vector<int>> table;
    for (const auto& row : s.at("products").as_list()) {
      std::vector<int> r;
      for (const auto& v : row.as_list()) r.push_back(index_of(v.as_name()));
      table.push_back(std::move(r));
    }
    int id = index_of(s.at("identity").as_name());
    out.group = make_table_group(std::move(table), id, names);
    for (std::size_t i = 0; i < names.size(); ++i) {
      out.names.emplace(names[i], Elem::index(static_cast<int>(i)));
    }
  } else {
    throw ConfigError("unknown group kind '" + kind + "'", s.line);
  }
  return out;
}

Elem parse_elem(const Elem& shape, const std::map<std::string, Elem>& names,
                const ConfigValue& v) {
  if (shape.is_vec()) {
    Elem::IntVec coords;
    for (const auto& item : v.as_list()) coords.push_back(item.as_int());
    return Elem::vec(std::move(coords));
  }
  if (shape.is_word()) {
    return Elem::word(v.as_name());
  }
  auto it = names.find(v.as_name());
  if (it == names.end()) {
    throw ConfigError("unknown element name '" + v.as_name() + "'", v.line);
  }
  return it->second;
}

struct BuiltZS {
  std::shared_ptr<const ZSData> zs;
  NamedSemigroup p;
  NamedGroup g;
};

BuiltZS build_zs(const RunConfig& cfg, const ConfigSection& s) {
  BuiltZS out;
  out.p = build_semigroup(cfg.resolve(s.at("semigroup").as_name(), s.line));
  out.g = build_group(cfg.resolve(s.at("group").as_name(), s.line));

  if (s.has("builtin")) {
    const std::string& builtin = s.at("builtin").as_name();
    if (builtin == "trivial") {
      out.zs = ZSData::trivial(out.p.sg, out.g.group);
    } else if (builtin == "odometer") {
      if (!out.p.sg->identity().is_word() ||
          out.g.group->identity() != Elem::vec({0})) {
        throw ConfigError(
            "odometer needs a free monoid over \"01\" and the rank-1 free "
            "abelian group",
            s.line);
      }
      Elem a = Elem::vec({1});
      Elem e = Elem::vec({0});
      std::vector<LetterRule> rules = {{a, '0', '1', e}, {a, '1', '0', a}};
      out.zs = extend_action_from_generators(out.p.sg, out.g.group, rules,
                                             cfg.radius_p, cfg.radius_g);
    } else if (builtin == "coordinate_swap") {
      Elem probe = out.p.sg->identity();
      if (!probe.is_vec() || probe.as_vec().size() != 2 ||
          !out.g.group->finite() || out.g.group->elements().size() != 2) {
        throw ConfigError("coordinate_swap needs N^2 and a 2-element group",
                          s.line);
      }
      Elem swap = Elem::index(1);
      out.zs = std::make_shared<ZSData>(
          out.p.sg, out.g.group,
          [swap](const Elem& h, const Elem& q) {
            if (h != swap) return q;
            const auto& v = q.as_vec();
            return Elem::vec({v[1], v[0]});
          },
          [](const Elem& h, const Elem&) { return h; },
          "builtin(coordinate-swap)");
    } else {
      throw ConfigError("unknown zs builtin '" + builtin + "'", s.line);
    }
  } else if (s.has("rules")) {
    std::vector<LetterRule> rules;
    for (const auto& rule : s.at("rules").as_list()) {
      const auto& parts = rule.as_list();
      if (parts.size() != 4) {
        throw ConfigError("letter rule needs [g, letter, image, restriction]",
                          rule.line);
      }
      LetterRule r;
      r.g = parse_elem(out.g.group->identity(), out.g.names, parts[0]);
      const std::string& letter = parts[1].as_name();
      const std::string& image = parts[2].as_name();
      if (letter.size() != 1 || image.size() != 1) {
        throw ConfigError("letters must be single characters", rule.line);
      }
      r.letter = letter[0];
      r.image = image[0];
      r.restriction = parse_elem(out.g.group->identity(), out.g.names, parts[3]);
      rules.push_back(std::move(r));
    }
    out.zs = extend_action_from_generators(out.p.sg, out.g.group, rules,
                                           cfg.radius_p, cfg.radius_g);
  } else {
    throw ConfigError("zs section needs 'builtin' or 'rules'", s.line);
  }

  auto parse_overrides = [&](const char* key) {
    std::vector<std::tuple<Elem, Elem, Elem>> overrides;
    if (!s.has(key)) return overrides;
    for (const auto& entry : s.at(key).as_list()) {
      const auto& parts = entry.as_list();
      if (parts.size() != 3) {
        throw ConfigError("override needs [g, p, value]", entry.line);
      }
      Elem g = parse_elem(out.g.group->identity(), out.g.names, parts[0]);
      Elem p = parse_elem(out.p.sg->identity(), out.p.names, parts[1]);
      // Action overrides map into P, restriction overrides into G.
      bool action = std::string(key) == "tamper_action";
      Elem value = action
                       ? parse_elem(out.p.sg->identity(), out.p.names, parts[2])
                       : parse_elem(out.g.group->identity(), out.g.names,
                                    parts[2]);
      overrides.emplace_back(g, p, value);
    }
    return overrides;
  };
  auto action_over = parse_overrides("tamper_action");
  auto res_over = parse_overrides("tamper_restriction");
  if (!action_over.empty() || !res_over.empty()) {
    out.zs = out.zs->with_overrides(std::move(action_over), std::move(res_over));
  }
  return out;
}

std::shared_ptr<const KGraph> build_kgraph(const ConfigSection& s) {
  int rank = s.has("rank") ? static_cast<int>(s.at("rank").as_int()) : 1;
  std::vector<std::string> vertices;
  for (const auto& v : s.at("vertices").as_list()) {
    vertices.push_back(v.as_name());
  }
  auto vertex_index = [&vertices, &s](const std::string& n) {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i] == n) return static_cast<int>(i);
    }
    throw ConfigError("unknown vertex '" + n + "'", s.line);
  };
  std::vector<KGraph::Edge> edges;
  for (const auto& e : s.at("edges").as_list()) {
    const auto& parts = e.as_list();
    if (parts.size() < 3) {
      throw ConfigError("edge needs [name, range, source(, dir)]", e.line);
    }
    KGraph::Edge edge;
    edge.name = parts[0].as_name();
    edge.range = vertex_index(parts[1].as_name());
    edge.source = vertex_index(parts[2].as_name());
    edge.dir = parts.size() > 3 ? static_cast<int>(parts[3].as_int()) : 0;
    edges.push_back(std::move(edge));
  }
  auto edge_index = [&edges, &s](const std::string& n) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].name == n) return static_cast<int>(i);
    }
    throw ConfigError("unknown edge '" + n + "'", s.line);
  };
  std::vector<KGraph::Square> squares;
  if (s.has("squares")) {
    for (const auto& sq : s.at("squares").as_list()) {
      const auto& parts = sq.as_list();
      if (parts.size() != 4) {
        throw ConfigError("square needs [e, f, f', e']", sq.line);
      }
      squares.push_back({edge_index(parts[0].as_name()),
                         edge_index(parts[1].as_name()),
                         edge_index(parts[2].as_name()),
                         edge_index(parts[3].as_name())});
    }
  }
  return std::make_shared<KGraph>(rank, std::move(vertices), std::move(edges),
                                  std::move(squares));
}

std::shared_ptr<const SelfSimilarAction> build_selfsimilar(
    const RunConfig& cfg, const ConfigSection& s,
    std::shared_ptr<const KGraph>* graph_out) {
  auto graph = build_kgraph(cfg.resolve(s.at("graph").as_name(), s.line));
  NamedGroup g = build_group(cfg.resolve(s.at("group").as_name(), s.line));
  std::map<std::pair<Elem, int>, int> vertex_action;
  for (const auto& entry : s.at("vertex_action").as_list()) {
    const auto& parts = entry.as_list();
    if (parts.size() != 3) {
      throw ConfigError("vertex action needs [g, v, image]", entry.line);
    }
    Elem gg = parse_elem(g.group->identity(), g.names, parts[0]);
    vertex_action[{gg, graph->vertex_index(parts[1].as_name())}] =
        graph->vertex_index(parts[2].as_name());
  }
  std::map<std::pair<Elem, int>, std::pair<int, Elem>> edge_action;
  for (const auto& entry : s.at("edge_action").as_list()) {
    const auto& parts = entry.as_list();
    if (parts.size() != 4) {
      throw ConfigError("edge action needs [g, edge, image, restriction]",
                        entry.line);
    }
    Elem gg = parse_elem(g.group->identity(), g.names, parts[0]);
    edge_action[{gg, graph->edge_index(parts[1].as_name())}] = {
        graph->edge_index(parts[2].as_name()),
        parse_elem(g.group->identity(), g.names, parts[3])};
  }
  if (graph_out) *graph_out = graph;
  return std::make_shared<SelfSimilarAction>(graph, g.group, vertex_action,
                                             edge_action);
}

std::shared_ptr<const MatrixStarAlgebra> build_algebra(const ConfigSection& s) {
  const std::string& kind = s.at("kind").as_name();
  int dim = s.has("dim") ? static_cast<int>(s.at("dim").as_int()) : 1;
  if (kind == "scalars") return MatrixStarAlgebra::scalars();
  if (kind == "diagonal") return MatrixStarAlgebra::diagonal(dim);
  if (kind == "full") return MatrixStarAlgebra::full_matrix(dim);
  throw ConfigError("unknown algebra kind '" + kind + "'", s.line);
}

/// Everything a run needs, built once.
struct Lab {
  ZSSystem sys;
  NamedSemigroup p;
  NamedGroup g;
  std::shared_ptr<const SelfSimilarAction> selfsimilar;  // when applicable
  VertexConvention convention = VertexConvention::kSource;
};

Lab build_lab(const RunConfig& cfg) {
  const ConfigSection* sys_section = cfg.find_unique("system");
  if (!sys_section) {
    throw ConfigError("configuration needs a [system] section", -1);
  }
  Lab lab;
  const std::string& builtin = sys_section->at("builtin").as_name();
  if (sys_section->has("convention")) {
    const std::string& c = sys_section->at("convention").as_name();
    if (c == "source") {
      lab.convention = VertexConvention::kSource;
    } else if (c == "range") {
      lab.convention = VertexConvention::kRange;
    } else {
      throw ConfigError("convention must be source or range", sys_section->line);
    }
  }

  if (builtin == "trivial") {
    BuiltZS zs = build_zs(
        cfg, cfg.resolve(sys_section->at("zs").as_name(), sys_section->line));
    lab.sys = trivial_system(zs.zs, cfg.radius_p, cfg.radius_g);
    lab.p = zs.p;
    lab.g = zs.g;
    return lab;
  }
  if (builtin == "kgraph") {
    auto graph = build_kgraph(
        cfg.resolve(sys_section->at("graph").as_name(), sys_section->line));
    auto system = kgraph_system(graph, cfg.radius_p, lab.convention);
    auto trivial = make_trivial_group();
    ZSSystem s;
    s.system = system;
    s.zs = ZSData::trivial(system->grading_ptr(), trivial);
    s.beta = std::make_shared<ZSAction>([system](const Elem&, const Elem& p) {
      return identity(system->fiber(p).dim());
    });
    s.gball = trivial->ball(1);
    lab.sys = s;
    lab.g.group = trivial;
    return lab;
  }
  if (builtin == "selfsimilar") {
    const ConfigSection& act =
        cfg.resolve(sys_section->at("action").as_name(), sys_section->line);
    lab.selfsimilar = build_selfsimilar(cfg, act, nullptr);
    lab.sys = selfsimilar_beta(lab.selfsimilar, cfg.radius_p, cfg.radius_g,
                               lab.convention);
    lab.g.group = lab.selfsimilar->group_ptr();
    return lab;
  }
  if (builtin == "diagonal_pair") {
    lab.sys = diagonal_pair_system(cfg.radius_p);
    lab.g.group = lab.sys.zs->G_ptr();
    return lab;
  }
  if (builtin == "custom") {
    BuiltZS zs = build_zs(
        cfg, cfg.resolve(sys_section->at("zs").as_name(), sys_section->line));
    auto algebra = build_algebra(
        cfg.resolve(sys_section->at("algebra").as_name(), sys_section->line));
    const int m = static_cast<int>(sys_section->at("fiber_dim").as_int());

    // Stationary fiber data reused over the whole ball.
    const auto& inner_list = sys_section->at("inner").as_list();
    if (static_cast<int>(inner_list.size()) != m * m) {
      throw ConfigError("inner must list fiber_dim^2 matrices",
                        sys_section->at("inner").line);
    }
    std::vector<std::vector<CMat>> inner(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        inner[static_cast<std::size_t>(i)].push_back(
            inner_list[static_cast<std::size_t>(i * m + j)].as_matrix());
      }
    }
    auto read_mats = [&](const char* key) {
      std::vector<CMat> mats;
      for (const auto& v : sys_section->at(key).as_list()) {
        mats.push_back(v.as_matrix());
      }
      return mats;
    };
    std::vector<CMat> left = read_mats("left");
    std::vector<CMat> right = read_mats("right");
    CMat mult = sys_section->at("mult").as_matrix();
    std::vector<CMat> e_basis = read_mats("e_basis");

    ProductSystem::Data data;
    data.grading = zs.p.sg;
    data.ball = zs.p.sg->ball(cfg.radius_p);
    data.coeff = algebra;
    data.e_basis = e_basis;
    for (const Elem& p : data.ball.elems) {
      data.fibers.emplace(p, Correspondence(algebra, inner, left, right));
    }
    for (const Elem& p : data.ball.elems) {
      for (const Elem& q : data.ball.elems) {
        if (!data.ball.contains(zs.p.sg->multiply(p, q))) continue;
        data.mult.emplace(std::make_pair(p, q), mult);
      }
    }
    lab.sys.system = std::make_shared<ProductSystem>(std::move(data));
    lab.sys.zs = zs.zs;
    lab.sys.gball = zs.g.group->ball(cfg.radius_g);
    lab.p = zs.p;
    lab.g = zs.g;

    const ConfigSection& act =
        cfg.resolve(sys_section->at("action").as_name(), sys_section->line);
    const std::string& act_builtin = act.at("builtin").as_name();
    if (act_builtin == "identity") {
      auto system = lab.sys.system;
      lab.sys.beta =
          std::make_shared<ZSAction>([system](const Elem&, const Elem& p) {
            return identity(system->fiber(p).dim());
          });
    } else if (act_builtin == "stationary") {
      std::map<Elem, CMat> mats;
      for (const auto& entry : act.at("beta").as_list()) {
        const auto& parts = entry.as_list();
        if (parts.size() != 2) {
          throw ConfigError("beta entry needs [g, matrix]", entry.line);
        }
        Elem gg = parse_elem(zs.g.group->identity(), zs.g.names, parts[0]);
        mats.emplace(gg, parts[1].as_matrix());
      }
      mats.emplace(zs.g.group->identity(), identity(m));
      lab.sys.beta = std::make_shared<ZSAction>(
          [mats](const Elem& g, const Elem&) -> CMat {
            auto it = mats.find(g);
            if (it == mats.end()) {
              throw DomainError("no beta matrix for " + g.to_string());
            }
            return it->second;
          });
    } else {
      throw ConfigError("unknown action builtin '" + act_builtin + "'",
                        act.line);
    }
    if (act.has("tamper_scale")) {
      const auto& parts = act.at("tamper_scale").as_list();
      if (parts.size() != 3) {
        throw ConfigError("tamper_scale needs [g, p, factor]",
                          act.at("tamper_scale").line);
      }
      Elem gg = parse_elem(zs.g.group->identity(), zs.g.names, parts[0]);
      Elem pp = parse_elem(zs.p.sg->identity(), zs.p.names, parts[1]);
      lab.sys.beta = lab.sys.beta->with_scale_override(
          gg, pp, parts[2].as_complex());
    }
    return lab;
  }
  throw ConfigError("unknown system builtin '" + builtin + "'",
                    sys_section->line);
}

SuiteResult from_report(const std::string& name, const ViolationReport& r,
                        const std::string& note = "") {
  SuiteResult out;
  out.name = name;
  out.status = r.ok() ? "pass" : "fail";
  out.note = note;
  out.checked = r.checked();
  out.skipped = r.skipped();
  out.violations = r.violations();
  out.worst_residual = r.worst_residual();
  for (const auto& [tag, count] : r.tag_counts()) {
    out.violation_tags[tag] = count;
  }
  out.witnesses = r.witnesses();
  return out;
}

SuiteResult skipped_suite(const std::string& name, const std::string& why) {
  SuiteResult out;
  out.name = name;
  out.status = "skip";
  out.note = why;
  return out;
}

}  // namespace

VerificationReport run_suites(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport report;
  report.config_hash = config_hash(cfg.raw_text);
  report.tolerance = cfg.tolerance;
  report.radius_p = cfg.radius_p;
  report.radius_g = cfg.radius_g;
  report.fock_ball = cfg.fock_ball;

  Tolerance tol{cfg.tolerance};
  Lab lab = build_lab(cfg);
  ZSSystem& sys = lab.sys;
  const Ball pball = sys.system->ball();

  // Lazy shared state across suites.
  std::optional<bool> action_ok;
  auto ensure_action = [&]() {
    if (!action_ok.has_value()) {
      action_ok = validate_zs_action(sys, tol).ok() &&
                  validate_product_system(*sys.system, tol).ok();
    }
    return *action_ok;
  };
  std::optional<BowtieSystem> bowtie;
  auto ensure_bowtie = [&]() -> BowtieSystem& {
    if (!bowtie.has_value()) {
      bowtie = build_bowtie(sys, /*assume_valid=*/true);
    }
    return *bowtie;
  };
  std::optional<ToeplitzRep> fock;
  std::optional<UnitaryRep> fock_u;
  auto ensure_fock = [&]() -> ToeplitzRep& {
    if (!fock.has_value()) {
      int n = 0;
      for (const Elem& s : sys.system->grading().ball(cfg.fock_ball).elems) {
        n += sys.system->fiber(s).dim();
      }
      if (n > cfg.max_dim) {
        throw ConstructionError(
            "Fock dimension " + std::to_string(n) + " exceeds max_dim " +
            std::to_string(cfg.max_dim));
      }
      fock = build_fock_rep(sys.system, cfg.fock_ball);
    }
    return *fock;
  };
  auto ensure_fock_unitary = [&]() -> UnitaryRep& {
    if (!fock_u.has_value()) fock_u = build_fock_unitary(sys, cfg.fock_ball);
    return *fock_u;
  };
  std::optional<bool> covariance_ok;
  auto ensure_covariant = [&]() {
    if (!covariance_ok.has_value()) {
      covariance_ok =
          validate_covariance(ensure_fock(), ensure_fock_unitary(), sys, tol)
              .ok();
    }
    return *covariance_ok;
  };

  for (const std::string& name : cfg.suites) {
    try {
      if (name == "zs-axioms") {
        ViolationReport r =
            zs_axiom_check(*sys.zs, pball, sys.zs->G().ball(cfg.radius_g));
        if (sys.zs->P().right_lcm_available()) {
          r.merge(check_right_lcm(sys.zs->P(), pball));
        }
        report.suites.push_back(from_report(name, r));
      } else if (name == "action-axioms") {
        ViolationReport r = validate_product_system(*sys.system, tol);
        r.merge(validate_fibers(*sys.system, tol));
        r.merge(validate_zs_action(sys, tol));
        action_ok = r.ok();
        report.suites.push_back(from_report(name, r));
      } else if (name == "bowtie") {
        if (!ensure_action()) {
          report.suites.push_back(
              skipped_suite(name, "action axioms fail on this window"));
          continue;
        }
        BowtieSystem& y = ensure_bowtie();
        ViolationReport r = validate_product_system(*y.system, tol);
        r.merge(validate_fibers(*y.system, tol));
        if (sys.zs->P().right_lcm_available()) {
          r.merge(check_compactly_aligned(*y.system, tol));
        }
        report.suites.push_back(from_report(name, r));
      } else if (name == "bowtie-tilde") {
        if (!ensure_action()) {
          report.suites.push_back(
              skipped_suite(name, "action axioms fail on this window"));
          continue;
        }
        if (!is_homogeneous(sys)) {
          report.suites.push_back(
              skipped_suite(name, "action is not homogeneous"));
          continue;
        }
        if (!sys.zs->G().finite()) {
          report.suites.push_back(skipped_suite(name, "group is infinite"));
          continue;
        }
        TildeSystem z = build_tilde_bowtie(sys, /*assume_valid=*/true);
        ViolationReport r = z.crossed->check(tol);
        r.merge(validate_product_system(*z.system, tol));
        r.merge(validate_fibers(*z.system, tol));
        if (lab.selfsimilar) {
          TildeSystem direct = calE_system(lab.selfsimilar, cfg.radius_p);
          r.merge(compare_product_systems(*direct.system, *z.system));
        }
        report.suites.push_back(from_report(name, r));
      } else if (name == "toeplitz") {
        report.suites.push_back(
            from_report(name, validate_toeplitz(ensure_fock(), tol)));
      } else if (name == "covariance") {
        ViolationReport r = ensure_fock_unitary().validate(tol);
        r.merge(validate_covariance(ensure_fock(), ensure_fock_unitary(), sys,
                                    tol));
        covariance_ok = r.ok();
        report.suites.push_back(from_report(name, r));
      } else if (name == "round-trip") {
        if (!ensure_action() || !ensure_covariant()) {
          report.suites.push_back(skipped_suite(
              name, "action or covariance checks fail on this window"));
          continue;
        }
        ViolationReport r("round-trip");
        BowtieSystem& y = ensure_bowtie();
        ToeplitzRep joint =
            to_joint_rep(ensure_fock(), ensure_fock_unitary(), y,
                         /*validate=*/false);
        r.merge(validate_toeplitz(joint, tol));
        CovariantPair back = from_joint_rep(joint, y);
        double worst = 0.0;
        for (const auto& [p, mats] : ensure_fock().maps()) {
          const auto& rec = back.psi.fiber_maps(p);
          for (std::size_t i = 0; i < mats.size(); ++i) {
            worst = std::max(worst, max_abs_diff(mats[i], rec[i]));
          }
        }
        for (const auto& [g, m] : ensure_fock_unitary().mats) {
          worst = std::max(worst, max_abs_diff(m, back.u.at(g)));
        }
        r.add_checked();
        if (worst > 1e-12) {
          r.add_violation("round-trip", "joint extraction", worst);
        }
        if (!back.psi_e_unital) {
          r.add_checked();
          r.add_violation("psi-e-unital",
                          "extracted group images are partial isometries",
                          back.unital_residual);
        }
        if (is_homogeneous(sys) && sys.zs->G().finite()) {
          TildeSystem z = build_tilde_bowtie(sys, /*assume_valid=*/true);
          ToeplitzRep tilde =
              to_tilde_rep(ensure_fock(), ensure_fock_unitary(), z,
                           /*validate=*/false);
          r.merge(validate_toeplitz(tilde, tol));
          CovariantPair tback = from_tilde_rep(tilde, z);
          double tworst = 0.0;
          for (const auto& [p, mats] : ensure_fock().maps()) {
            const auto& rec = tback.psi.fiber_maps(p);
            for (std::size_t i = 0; i < mats.size(); ++i) {
              tworst = std::max(tworst, max_abs_diff(mats[i], rec[i]));
            }
          }
          r.add_checked();
          if (tworst > 1e-12) {
            r.add_violation("round-trip", "homogeneous extraction", tworst);
          }
          ToeplitzRep transported = transport_rep(tilde, z, y, tol);
          r.merge(validate_toeplitz(transported, tol));
        }
        report.suites.push_back(from_report(name, r));
      } else if (name == "cp") {
        if (!ensure_action() || !ensure_covariant()) {
          report.suites.push_back(skipped_suite(
              name, "action or covariance checks fail on this window"));
          continue;
        }
        BowtieSystem& y = ensure_bowtie();
        ToeplitzRep joint =
            to_joint_rep(ensure_fock(), ensure_fock_unitary(), y,
                         /*validate=*/false);
        CovariantPair pair = from_joint_rep(joint, y);
        report.suites.push_back(
            from_report(name, check_cp_equivalence(joint, pair, y, tol)));
      } else if (name == "nica") {
        if (!sys.zs->P().right_lcm_available()) {
          report.suites.push_back(
              skipped_suite(name, "grading semigroup is not right LCM"));
          continue;
        }
        if (!ensure_action() || !ensure_covariant()) {
          report.suites.push_back(skipped_suite(
              name, "action or covariance checks fail on this window"));
          continue;
        }
        ViolationReport r = check_compactly_aligned(*sys.system, tol);
        // Nica residual sweep of the base Fock representation.
        ToeplitzRep& psi = ensure_fock();
        for (const Elem& p : pball.elems) {
          const Correspondence& xp = sys.system->fiber(p);
          CVec e0 = CVec::Zero(xp.dim());
          e0(0) = 1.0;
          CMat s0 = xp.rank_one(e0, e0);
          for (const Elem& q : pball.elems) {
            auto lcm = sys.zs->P().lcm(p, q);
            if (lcm.has_value() && !pball.contains(*lcm)) {
              r.add_skipped();
              continue;
            }
            const Correspondence& xq = sys.system->fiber(q);
            CVec f0 = CVec::Zero(xq.dim());
            f0(0) = 1.0;
            CMat t0 = xq.rank_one(f0, f0);
            double residual = nica_residual(psi, p, q, s0, t0, tol.eps);
            r.add_checked();
            if (residual > tol.eps) {
              r.add_violation("nica-residual",
                              "(" + p.to_string() + "," + q.to_string() + ")",
                              residual);
            }
          }
        }
        BowtieSystem& y = ensure_bowtie();
        ToeplitzRep joint =
            to_joint_rep(psi, ensure_fock_unitary(), y, /*validate=*/false);
        CovariantPair pair = from_joint_rep(joint, y);
        r.merge(check_nica_equivalence(joint, pair, y, tol));
        report.suites.push_back(from_report(name, r));
      } else {
        report.suites.push_back(skipped_suite(name, "unknown suite"));
      }
    } catch (const UnsupportedStructureError& e) {
      report.suites.push_back(skipped_suite(name, e.what()));
    }
  }

  report.all_pass = true;
  for (const auto& s : report.suites) {
    if (s.status == "fail") report.all_pass = false;
  }
  report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return report;
}

std::string VerificationReport::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["config_hash"] = config_hash;
  j["tolerance"] = tolerance;
  j["windows"] = {{"radius_p", radius_p},
                  {"radius_g", radius_g},
                  {"fock_ball", fock_ball}};
  j["suites"] = json::array();
  for (const auto& s : suites) {
    json js;
    js["name"] = s.name;
    js["status"] = s.status;
    if (!s.note.empty()) js["note"] = s.note;
    js["checked"] = s.checked;
    js["skipped"] = s.skipped;
    js["violations"] = s.violations;
    js["worst_residual"] = s.worst_residual;
    if (!s.violation_tags.empty()) {
      json jt = json::object();
      for (const auto& [tag, count] : s.violation_tags) jt[tag] = count;
      js["violation_tags"] = std::move(jt);
    }
    js["witnesses"] = json::array();
    for (const auto& w : s.witnesses) {
      js["witnesses"].push_back(
          {{"tag", w.tag}, {"witness", w.witness}, {"residual", w.residual}});
    }
    j["suites"].push_back(std::move(js));
  }
  j["all_pass"] = all_pass;
  j["wall_ms"] = wall_ms;
  return j.dump(2) + "\n";
}

VerificationReport VerificationReport::from_json(const std::string& text) {
  json j = json::parse(text);
  VerificationReport out;
  out.schema_version = j.at("schema_version").get<int>();
  if (out.schema_version != 1) {
    throw Error("unsupported report schema version " +
                std::to_string(out.schema_version));
  }
  out.config_hash = j.at("config_hash").get<std::string>();
  out.tolerance = j.at("tolerance").get<double>();
  out.radius_p = j.at("windows").at("radius_p").get<int>();
  out.radius_g = j.at("windows").at("radius_g").get<int>();
  out.fock_ball = j.at("windows").at("fock_ball").get<int>();
  for (const auto& js : j.at("suites")) {
    SuiteResult s;
    s.name = js.at("name").get<std::string>();
    s.status = js.at("status").get<std::string>();
    if (js.contains("note")) s.note = js.at("note").get<std::string>();
    s.checked = js.at("checked").get<std::uint64_t>();
    s.skipped = js.at("skipped").get<std::uint64_t>();
    s.violations = js.at("violations").get<std::uint64_t>();
    s.worst_residual = js.at("worst_residual").get<double>();
    if (js.contains("violation_tags")) {
      for (const auto& [tag, count] : js.at("violation_tags").items()) {
        s.violation_tags[tag] = count.get<std::uint64_t>();
      }
    }
    for (const auto& jw : js.at("witnesses")) {
      s.witnesses.push_back({jw.at("tag").get<std::string>(),
                             jw.at("witness").get<std::string>(),
                             jw.at("residual").get<double>()});
    }
    out.suites.push_back(std::move(s));
  }
  out.all_pass = j.at("all_pass").get<bool>();
  out.wall_ms = j.at("wall_ms").get<std::int64_t>();
  return out;
}

std::string VerificationReport::render_text() const {
  std::ostringstream os;
  os << "config " << config_hash << "  tolerance " << tolerance
     << "  windows p=" << radius_p << " g=" << radius_g
     << " fock=" << fock_ball << "\n";
  for (const auto& s : suites) {
    os << "  [" << (s.status == "pass" ? "PASS" : s.status == "fail" ? "FAIL" : "SKIP")
       << "] " << s.name << ": " << s.checked << " checked, " << s.skipped
       << " skipped";
    if (s.violations > 0) {
      os << ", " << s.violations << " violated (worst residual "
         << s.worst_residual << ")";
    }
    if (!s.note.empty()) os << " -- " << s.note;
    os << "\n";
    for (const auto& w : s.witnesses) {
      os << "      [" << w.tag << "] " << w.witness << " (residual "
         << w.residual << ")\n";
    }
  }
  os << (all_pass ? "all suites passed" : "violations found") << " in "
     << wall_ms << " ms\n";
  return os.str();
}

}  // namespace zslab
