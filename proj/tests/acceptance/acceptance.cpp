// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zslab/generators.hpp"
#include "zslab/representations.hpp"
#include "zslab/suites.hpp"

using namespace zslab;

namespace {

struct Gate {
  int failures = 0;

  void criterion(int n, const std::string& label, bool ok,
                 const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", n,
                label.c_str(), detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!ok) ++failures;
  }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string strip_wall(std::string json) {
  auto pos = json.find("\"wall_ms\"");
  if (pos == std::string::npos) return json;
  auto end = json.find('\n', pos);
  json.erase(pos, end - pos);
  return json;
}

std::shared_ptr<const SelfSimilarAction> loop_swap_action() {
  auto graph = KGraph::from_graph({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}});
  auto z2 = make_cyclic_group(2);
  Elem g = Elem::index(1);
  std::map<std::pair<Elem, int>, int> vertex_action = {{{g, 0}, 0}};
  std::map<std::pair<Elem, int>, std::pair<int, Elem>> edge_action = {
      {{g, 0}, {1, g}}, {{g, 1}, {0, g}}};
  return std::make_shared<SelfSimilarAction>(graph, z2, vertex_action,
                                             edge_action);
}

struct NamedSystem {
  std::string name;
  ZSSystem sys;
};

std::vector<NamedSystem> test_systems() {
  std::vector<NamedSystem> out;
  out.push_back({"trivial+odometer", trivial_system(odometer_zs(), 3, 2)});
  out.push_back({"self-similar swap", selfsimilar_beta(loop_swap_action(), 3, 1)});
  out.push_back({"diagonal pair", diagonal_pair_system(3)});
  out.push_back({"N^2 coordinate swap",
                 trivial_system(coordinate_swap_zs(), 2, 1)});
  return out;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(ZSLAB_CLI_PATH) + " " + args;
  int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

}  // namespace

int main() {
  Gate gate;
  const std::string configs = std::string(ZSLAB_SOURCE_DIR) + "/configs/";

  // 1. The eight compatibility axioms for the adding machine, exhaustively
  //    on the 31-word x 7-element window, exact equality, under a second.
  {
    auto zs = odometer_zs();
    Ball words = zs->P().ball(4);
    Ball gs = zs->G().ball(3);
    auto t0 = std::chrono::steady_clock::now();
    ViolationReport r = zs_axiom_check(*zs, words, gs);
    double elapsed = ms_since(t0);
    bool ok = r.ok() && words.size() == 31 && gs.size() == 7 && elapsed < 1000;
    auto tampered = zs->with_overrides(
        {}, {{Elem::vec({1}), Elem::word("1"), Elem::vec({0})}});
    ViolationReport tr = zs_axiom_check(*tampered, words, gs);
    ok = ok && !tr.ok();
    std::ostringstream note;
    note << r.checked() << " checks, " << elapsed << " ms; tamper detected with "
         << tr.violations() << " violations";
    gate.criterion(1, "two-way action axioms for the adding machine", ok,
                   note.str());
  }

  // 2. The product system over the product semigroup, for all three build
  //    cases, with every multiplication unitary and associativity exact to
  //    1e-9 inside the window, each under 10 seconds.
  {
    bool ok = true;
    std::ostringstream note;
    for (const auto& [name, sys] : test_systems()) {
      auto t0 = std::chrono::steady_clock::now();
      BowtieSystem y = build_bowtie(sys, /*assume_valid=*/false);
      ViolationReport r = validate_product_system(*y.system, Tolerance{1e-9});
      double elapsed = ms_since(t0);
      bool case_ok = r.ok() && elapsed < 10000;
      ok = ok && case_ok;
      note << name << "=" << (case_ok ? "ok" : "FAIL") << "(" << elapsed
           << "ms) ";
    }
    gate.criterion(2, "product systems over the product semigroup", ok,
                   note.str());
  }

  // 3. The homogeneous product over P with crossed-product coefficients:
  //    validation to 1e-9, covariance and expectation identities, and the
  //    2x2 case has dimension 4 with trivial center.
  {
    bool ok = true;
    std::ostringstream note;
    for (const auto& [name, sys] : test_systems()) {
      if (!is_homogeneous(sys) || !sys.zs->G().finite()) continue;
      TildeSystem z = build_tilde_bowtie(sys, /*assume_valid=*/true);
      ViolationReport r = z.crossed->check(Tolerance{1e-9});
      r.merge(validate_product_system(*z.system, Tolerance{1e-9}));
      ok = ok && r.ok();
      note << name << "=" << (r.ok() ? "ok" : "FAIL") << " ";
    }
    TildeSystem diag = build_tilde_bowtie(diagonal_pair_system(2), true);
    bool m2 = diag.crossed->algebra().dim() == 4 &&
              diag.crossed->center_dimension() == 1;
    ok = ok && m2;
    note << "2x2 crossed product: dim "
         << diag.crossed->algebra().dim() << ", center "
         << diag.crossed->center_dimension();
    gate.criterion(3, "homogeneous products with crossed coefficients", ok,
                   note.str());
  }

  // 4. Truncated Fock pairs: covariance holds on the safe domain and the
  //    correspondence with joint representations round-trips to 1e-12.
  {
    bool ok = true;
    std::ostringstream note;
    for (const auto& [name, sys] : test_systems()) {
      int fock_radius = sys.system->ball().radius;
      ToeplitzRep psi = build_fock_rep(sys.system, fock_radius);
      UnitaryRep u = build_fock_unitary(sys, fock_radius);
      ViolationReport cov = validate_covariance(psi, u, sys, Tolerance{1e-9});
      BowtieSystem y = build_bowtie(sys, /*assume_valid=*/true);
      ToeplitzRep joint = to_joint_rep(psi, u, y, /*validate=*/false);
      CovariantPair back = from_joint_rep(joint, y);
      double worst = 0.0;
      for (const auto& [p, mats] : psi.maps()) {
        const auto& rec = back.psi.fiber_maps(p);
        for (std::size_t i = 0; i < mats.size(); ++i) {
          worst = std::max(worst, max_abs_diff(mats[i], rec[i]));
        }
      }
      for (const auto& [g, m] : u.mats) {
        worst = std::max(worst, max_abs_diff(m, back.u.at(g)));
      }
      ToeplitzRep again = to_joint_rep(back.psi, back.u, y, /*validate=*/false);
      for (const auto& [pg, mats] : joint.maps()) {
        const auto& rec = again.fiber_maps(pg);
        for (std::size_t i = 0; i < mats.size(); ++i) {
          worst = std::max(worst, max_abs_diff(mats[i], rec[i]));
        }
      }
      bool case_ok = cov.ok() && worst <= 1e-12;
      ok = ok && case_ok;
      note << name << "=" << (case_ok ? "ok" : "FAIL") << " ";
    }
    gate.criterion(4, "covariant pairs <-> joint representations", ok,
                   note.str());
  }

  // 5. Homogeneous representation correspondence: exact round trips and
  //    transported representations pass Toeplitz validation.
  {
    bool ok = true;
    std::ostringstream note;
    for (const auto& [name, sys] : test_systems()) {
      if (!is_homogeneous(sys) || !sys.zs->G().finite()) continue;
      int fock_radius = sys.system->ball().radius;
      TildeSystem z = build_tilde_bowtie(sys, /*assume_valid=*/true);
      ToeplitzRep psi = build_fock_rep(sys.system, fock_radius);
      UnitaryRep u = build_fock_unitary(sys, fock_radius);
      ToeplitzRep rep = to_tilde_rep(psi, u, z, /*validate=*/false);
      CovariantPair back = from_tilde_rep(rep, z);
      double worst = 0.0;
      for (const auto& [p, mats] : psi.maps()) {
        const auto& rec = back.psi.fiber_maps(p);
        for (std::size_t i = 0; i < mats.size(); ++i) {
          worst = std::max(worst, max_abs_diff(mats[i], rec[i]));
        }
      }
      for (const auto& [g, m] : u.mats) {
        worst = std::max(worst, max_abs_diff(m, back.u.at(g)));
      }
      BowtieSystem y = build_bowtie(sys, /*assume_valid=*/true);
      ToeplitzRep transported = transport_rep(rep, z, y, Tolerance{1e-9});
      ViolationReport tv = validate_toeplitz(transported, Tolerance{1e-9});
      ViolationReport rv = validate_toeplitz(rep, Tolerance{1e-9});
      bool case_ok = worst <= 1e-12 && tv.ok() && rv.ok();
      ok = ok && case_ok;
      note << name << "=" << (case_ok ? "ok" : "FAIL") << " ";
    }
    gate.criterion(5, "homogeneous representation correspondence", ok,
                   note.str());
  }

  // 6. Reinterpretation of fiber operators: rank-ones map to rank-ones
  //    entrywise to 1e-12 and the map is isometric.
  {
    bool ok = true;
    std::ostringstream note;
    for (const auto& [name, sys] : test_systems()) {
      BowtieSystem y = build_bowtie(sys, /*assume_valid=*/true);
      ViolationReport r = check_iota(y, Tolerance{1e-9}, 1e-12);
      ok = ok && r.ok();
      note << name << "=" << (r.ok() ? "ok" : "FAIL") << " ";
    }
    gate.criterion(6, "fiber operator reinterpretation", ok, note.str());
  }

  // 7. Cuntz-Pimsner defects agree across the correspondence to 1e-9, with
  //    the truncated shift defect exactly 1 and scalar defects exactly 0.
  {
    bool ok = true;
    std::ostringstream note;

    auto trivial_n =
        trivial_system(ZSData::trivial(make_nk_semigroup(1), make_trivial_group()), 3, 1);
    ToeplitzRep shift_fock = build_fock_rep(trivial_n.system, 3);
    double shift_defect = cp_defect(shift_fock, Elem::vec({1}));
    ok = ok && std::abs(shift_defect - 1.0) <= 1e-9;
    note << "shift defect " << shift_defect << "; ";

    std::map<Elem, std::vector<CMat>> scalar_maps;
    for (const Elem& p : trivial_n.system->ball().elems) {
      scalar_maps.emplace(p, std::vector<CMat>{identity(1)});
    }
    ToeplitzRep scalar(trivial_n.system, 1, std::move(scalar_maps));
    double scalar_worst = 0.0;
    for (const Elem& p : trivial_n.system->ball().elems) {
      scalar_worst = std::max(scalar_worst, cp_defect(scalar, p));
    }
    ok = ok && scalar_worst <= 1e-9;
    note << "scalar defect " << scalar_worst << "; ";

    // Defect agreement also holds for the zero-defect scalar pair.
    {
      BowtieSystem y0 = build_bowtie(trivial_n, /*assume_valid=*/true);
      UnitaryRep u0;
      u0.group = trivial_n.zs->G_ptr();
      u0.domain = trivial_n.gball;
      u0.space_dim = 1;
      u0.mats.emplace(trivial_n.zs->G().identity(), identity(1));
      ToeplitzRep joint0 = to_joint_rep(scalar, u0, y0, /*validate=*/false);
      CovariantPair pair0 = from_joint_rep(joint0, y0);
      ok = ok && check_cp_equivalence(joint0, pair0, y0, Tolerance{1e-9}).ok();
    }

    for (const auto& [name, sys] : test_systems()) {
      int fock_radius = sys.system->ball().radius;
      BowtieSystem y = build_bowtie(sys, /*assume_valid=*/true);
      ToeplitzRep psi = build_fock_rep(sys.system, fock_radius);
      UnitaryRep u = build_fock_unitary(sys, fock_radius);
      ToeplitzRep joint = to_joint_rep(psi, u, y, /*validate=*/false);
      CovariantPair pair = from_joint_rep(joint, y);
      ViolationReport r = check_cp_equivalence(joint, pair, y, Tolerance{1e-9});
      ok = ok && r.ok();
      note << name << "=" << (r.ok() ? "ok" : "FAIL") << " ";
    }
    gate.criterion(7, "Cuntz-Pimsner defect agreement", ok, note.str());
  }

  // 8. Nica covariance of the truncated Fock representations on safe
  //    domains, the embedding squares to 1e-12, and residual agreement.
  {
    bool ok = true;
    std::ostringstream note;

    auto n2 = trivial_system(
        ZSData::trivial(make_nk_semigroup(2), make_trivial_group()), 2, 1);
    ToeplitzRep fock2 = build_fock_rep(n2.system, 2);
    CMat one = identity(1);
    double r1 =
        nica_residual(fock2, Elem::vec({1, 0}), Elem::vec({0, 1}), one, one);
    auto fm = trivial_system(
        ZSData::trivial(make_free_monoid("01"), make_trivial_group()), 2, 1);
    ToeplitzRep fockf = build_fock_rep(fm.system, 2);
    double r2 = nica_residual(fockf, Elem::word("0"), Elem::word("1"), one, one);
    ok = ok && r1 <= 1e-9 && r2 <= 1e-9;
    note << "N^2 residual " << r1 << ", empty-meet residual " << r2 << "; ";

    // Full window sweeps over both named systems, meets present or empty.
    double sweep_worst = 0.0;
    for (const auto* sys : {&n2, &fm}) {
      const ToeplitzRep& rep = sys == &n2 ? fock2 : fockf;
      const Ball& ball = (*sys).system->ball();
      for (const Elem& p : ball.elems) {
        for (const Elem& q : ball.elems) {
          auto r = (*sys).zs->P().lcm(p, q);
          if (r.has_value() && !ball.contains(*r)) continue;
          sweep_worst =
              std::max(sweep_worst, nica_residual(rep, p, q, one, one));
        }
      }
    }
    ok = ok && sweep_worst <= 1e-9;
    note << "sweep worst " << sweep_worst << "; ";

    for (const auto& [name, sys] : test_systems()) {
      if (!sys.zs->P().right_lcm_available()) continue;
      int fock_radius = sys.system->ball().radius;
      BowtieSystem y = build_bowtie(sys, /*assume_valid=*/true);
      ToeplitzRep psi = build_fock_rep(sys.system, fock_radius);
      UnitaryRep u = build_fock_unitary(sys, fock_radius);
      ToeplitzRep joint = to_joint_rep(psi, u, y, /*validate=*/false);
      CovariantPair pair = from_joint_rep(joint, y);
      ViolationReport r =
          check_nica_equivalence(joint, pair, y, Tolerance{1e-9}, 1e-12);
      ok = ok && r.ok();
      note << name << "=" << (r.ok() ? "ok" : "FAIL") << " ";
    }
    gate.criterion(8, "Nica covariance and its transport", ok, note.str());
  }

  // 9. Generator bookkeeping: fiber dimensions, restriction-uniformity
  //    witnesses, and the crossed-coefficient construction coinciding with
  //    the homogeneous product to 1e-12.
  {
    bool ok = true;
    std::ostringstream note;
    auto graph = KGraph::from_graph({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}});
    auto sys = kgraph_system(graph, 3);
    for (int p = 0; p <= 3; ++p) {
      int expected = 1 << p;
      if (sys->fiber(Elem::vec({p})).dim() != expected) ok = false;
      if (static_cast<int>(graph->morphisms({p}).size()) != expected) ok = false;
    }
    note << "dims exact; ";

    auto z2 = make_cyclic_group(2);
    Elem g = Elem::index(1);
    std::map<std::pair<Elem, int>, int> va = {{{g, 0}, 0}};
    std::map<std::pair<Elem, int>, std::pair<int, Elem>> ea = {
        {{g, 0}, {1, Elem::index(0)}}, {{g, 1}, {0, g}}};
    auto bad = std::make_shared<SelfSimilarAction>(graph, z2, va, ea);
    std::string witness;
    bool caught = !bad->restriction_uniform(2, &witness) && !witness.empty();
    ok = ok && caught;
    note << "witness " << (caught ? "produced" : "MISSING") << "; ";

    auto action = loop_swap_action();
    TildeSystem direct = calE_system(action, 3);
    TildeSystem via = build_tilde_bowtie(selfsimilar_beta(action, 3, 1), true);
    ViolationReport cmp =
        compare_product_systems(*direct.system, *via.system, 1e-12);
    ok = ok && cmp.ok();
    note << "coincidence " << (cmp.ok() ? "exact" : "FAIL");
    gate.criterion(9, "generator bookkeeping", ok, note.str());
  }

  // 10. Command-line round trip: the shipped configurations verify with
  //     exit code 0, reports are stable across runs, and the tampered
  //     configuration exits 1 with a carry witness.
  {
    bool ok = true;
    std::ostringstream note;
    for (const char* cfg :
         {"selfsimilar_swap.cfg", "diag_swap.cfg", "nk2_swap.cfg",
          "kgraph_flip2.cfg", "odometer_trivial.cfg"}) {
      int code = run_cli("verify --config " + configs + cfg +
                         " --out acceptance_a.json > /dev/null");
      int code2 = run_cli("verify --config " + configs + cfg +
                          " --out acceptance_b.json > /dev/null");
      bool stable = strip_wall(read_file("acceptance_a.json")) ==
                    strip_wall(read_file("acceptance_b.json"));
      bool case_ok = code == 0 && code2 == 0 && stable;
      ok = ok && case_ok;
      note << cfg << "=" << (case_ok ? "ok" : "FAIL") << " ";
    }
    int rerender = run_cli("report acceptance_a.json > /dev/null");
    ok = ok && rerender == 0;
    int tampered = run_cli("verify --config " + configs +
                           "odometer_tampered.cfg --out acceptance_t.json > /dev/null");
    std::string treport = read_file("acceptance_t.json");
    bool witnessed = treport.find("ZS5") != std::string::npos;
    ok = ok && tampered == 1 && witnessed;
    note << "tampered exit " << tampered << (witnessed ? " with witness" : " NO WITNESS");
    std::remove("acceptance_a.json");
    std::remove("acceptance_b.json");
    std::remove("acceptance_t.json");
    gate.criterion(10, "command-line end-to-end", ok, note.str());
  }

  if (gate.failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", gate.failures);
  return 1;
}
