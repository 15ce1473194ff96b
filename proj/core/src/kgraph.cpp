#include "zslab/kgraph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

#include "zslab/errors.hpp"

namespace zslab {

KGraph::KGraph(int rank, std::vector<std::string> vertices,
               std::vector<Edge> edges, std::vector<Square> squares)
    : rank_(rank), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (rank_ < 1 || rank_ > 2) {
    throw ConstructionError("supported graph ranks are 1 and 2");
  }
  if (vertices_.empty()) throw ConstructionError("graph needs a vertex");
  for (const Edge& e : edges_) {
    if (e.range < 0 || e.range >= num_vertices() || e.source < 0 ||
        e.source >= num_vertices()) {
      throw ConstructionError("edge " + e.name + " has invalid endpoints");
    }
    if (e.dir < 0 || e.dir >= rank_) {
      throw ConstructionError("edge " + e.name + " has invalid direction");
    }
  }
  for (const Square& sq : squares) {
    auto valid = [this](int i) {
      return i >= 0 && i < static_cast<int>(edges_.size());
    };
    if (!valid(sq.e) || !valid(sq.f) || !valid(sq.f_alt) || !valid(sq.e_alt)) {
      throw ConstructionError("square references an unknown edge");
    }
    const Edge& e = edges_[static_cast<std::size_t>(sq.e)];
    const Edge& f = edges_[static_cast<std::size_t>(sq.f)];
    const Edge& fa = edges_[static_cast<std::size_t>(sq.f_alt)];
    const Edge& ea = edges_[static_cast<std::size_t>(sq.e_alt)];
    if (e.dir != 0 || ea.dir != 0 || f.dir != 1 || fa.dir != 1) {
      throw ConstructionError("square colors are wrong");
    }
    if (e.source != f.range || fa.source != ea.range || e.range != fa.range ||
        f.source != ea.source) {
      throw ConstructionError("square endpoints do not close up");
    }
    if (!swap_br_.emplace(std::make_pair(sq.e, sq.f),
                          std::make_pair(sq.f_alt, sq.e_alt))
             .second) {
      throw ConstructionError("duplicate square for a blue-red pair");
    }
    if (!swap_rb_.emplace(std::make_pair(sq.f_alt, sq.e_alt),
                          std::make_pair(sq.e, sq.f))
             .second) {
      throw ConstructionError("duplicate square for a red-blue pair");
    }
  }
  if (rank_ == 2) {
    // Every composable two-color pair must appear in exactly one square.
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      for (std::size_t j = 0; j < edges_.size(); ++j) {
        const Edge& a = edges_[i];
        const Edge& b = edges_[j];
        if (a.dir == 0 && b.dir == 1 && a.source == b.range &&
            !swap_br_.count({static_cast<int>(i), static_cast<int>(j)})) {
          throw ConstructionError("missing square for " + a.name + "." + b.name);
        }
        if (a.dir == 1 && b.dir == 0 && a.source == b.range &&
            !swap_rb_.count({static_cast<int>(i), static_cast<int>(j)})) {
          throw ConstructionError("missing square for " + a.name + "." + b.name);
        }
      }
    }
  }
}

int KGraph::edge_index(const std::string& name) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].name == name) return static_cast<int>(i);
  }
  throw DomainError("unknown edge " + name);
}

int KGraph::vertex_index(const std::string& name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] == name) return static_cast<int>(i);
  }
  throw DomainError("unknown vertex " + name);
}

int KGraph::range_of(const Path& mu) const {
  if (mu.edges.empty()) return mu.vertex;
  return edges_[static_cast<std::size_t>(mu.edges.front())].range;
}

int KGraph::source_of(const Path& mu) const {
  if (mu.edges.empty()) return mu.vertex;
  return edges_[static_cast<std::size_t>(mu.edges.back())].source;
}

Elem::IntVec KGraph::degree_of(const Path& mu) const {
  Elem::IntVec d(static_cast<std::size_t>(rank_), 0);
  for (int e : mu.edges) {
    ++d[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].dir)];
  }
  return d;
}

KGraph::Path KGraph::normalize(int range_vertex,
                               const std::vector<int>& word) const {
  // Bubble direction-0 edges to the front with the red-blue swaps. The word
  // must be composable throughout (checked by the callers).
  std::vector<int> w = word;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Edge& a = edges_[static_cast<std::size_t>(w[i])];
      const Edge& b = edges_[static_cast<std::size_t>(w[i + 1])];
      if (a.dir == 1 && b.dir == 0) {
        auto it = swap_rb_.find({w[i], w[i + 1]});
        if (it == swap_rb_.end()) {
          throw ConstructionError("no square for " + a.name + "." + b.name);
        }
        w[i] = it->second.first;
        w[i + 1] = it->second.second;
        moved = true;
      }
    }
  }
  Path out;
  out.vertex = range_vertex;
  out.edges = std::move(w);
  if (!out.edges.empty()) {
    out.vertex = edges_[static_cast<std::size_t>(out.edges.front())].range;
  }
  return out;
}

const std::vector<KGraph::Path>& KGraph::morphisms(
    const Elem::IntVec& degree) const {
  auto it = morphism_cache_.find(degree);
  if (it != morphism_cache_.end()) return it->second;
  if (static_cast<int>(degree.size()) != rank_) {
    throw DomainError("degree rank mismatch");
  }
  std::vector<Path> out;
  // Normal forms: direction-0 block then direction-1 block; enumerate
  // composable words directly.
  std::vector<int> word;
  std::int64_t total = 0;
  for (auto v : degree) total += v;
  if (total == 0) {
    for (int v = 0; v < num_vertices(); ++v) {
      Path p;
      p.vertex = v;
      out.push_back(std::move(p));
    }
  } else {
    for (int v = 0; v < num_vertices(); ++v) {
      // Starting (range) vertex v: walk dir-0 edges then dir-1 edges.
      std::function<void(int, int, int)> walk = [&](int dir, int remaining,
                                                    int at) {
        if (remaining == 0) {
          if (dir + 1 < rank_) {
            walk(dir + 1,
                 static_cast<int>(degree[static_cast<std::size_t>(dir + 1)]), at);
            return;
          }
          Path p;
          p.edges = word;
          p.vertex = v;
          out.push_back(std::move(p));
          return;
        }
        for (std::size_t e = 0; e < edges_.size(); ++e) {
          if (edges_[e].dir != dir || edges_[e].range != at) continue;
          word.push_back(static_cast<int>(e));
          walk(dir, remaining - 1, edges_[e].source);
          word.pop_back();
        }
      };
      walk(0, static_cast<int>(degree[0]), v);
    }
  }
  std::sort(out.begin(), out.end());
  auto& cached = morphism_cache_[degree];
  cached = std::move(out);
  for (std::size_t i = 0; i < cached.size(); ++i) {
    index_cache_[cached[i]] = static_cast<int>(i);
  }
  return cached;
}

int KGraph::index_of(const Path& mu) const {
  morphisms(degree_of(mu));
  auto it = index_cache_.find(mu);
  if (it == index_cache_.end()) {
    throw DomainError("morphism not found: " + path_name(mu));
  }
  return it->second;
}

KGraph::Path KGraph::compose(const Path& mu, const Path& nu) const {
  if (source_of(mu) != range_of(nu)) {
    throw DomainError("paths are not composable");
  }
  std::vector<int> word = mu.edges;
  word.insert(word.end(), nu.edges.begin(), nu.edges.end());
  return normalize(range_of(mu), word);
}

std::pair<KGraph::Path, KGraph::Path> KGraph::factor(
    const Path& mu, const Elem::IntVec& d1) const {
  Elem::IntVec d = degree_of(mu);
  if (d1.size() != d.size()) throw DomainError("degree rank mismatch");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d1[i] < 0 || d1[i] > d[i]) {
      throw DomainError("degree does not split");
    }
  }
  // Blue prefix is immediate in normal form; red prefix entries are pulled
  // forward through the remaining blues with the blue-red swaps.
  std::vector<int> word = mu.edges;
  const int blues = static_cast<int>(d1[0]);
  std::vector<int> alpha(word.begin(), word.begin() + blues);
  std::vector<int> rest(word.begin() + blues, word.end());
  if (rank_ == 2) {
    const int reds = static_cast<int>(d1[1]);
    for (int pulled = 0; pulled < reds; ++pulled) {
      // Bubble the next direction-1 edge up to the already-pulled prefix.
      std::size_t pos = static_cast<std::size_t>(pulled);
      while (pos < rest.size() &&
             edges_[static_cast<std::size_t>(rest[pos])].dir != 1) {
        ++pos;
      }
      if (pos >= rest.size()) throw DomainError("degree does not split");
      while (pos > static_cast<std::size_t>(pulled)) {
        auto it = swap_br_.find({rest[pos - 1], rest[pos]});
        if (it == swap_br_.end()) {
          throw ConstructionError("no square while factoring");
        }
        rest[pos - 1] = it->second.first;
        rest[pos] = it->second.second;
        --pos;
      }
    }
    alpha.insert(alpha.end(), rest.begin(), rest.begin() + reds);
    rest.erase(rest.begin(), rest.begin() + reds);
  }
  Path a = normalize(range_of(mu), alpha);
  Path b = normalize(source_of(a), rest);
  return {a, b};
}

std::string KGraph::path_name(const Path& mu) const {
  if (mu.edges.empty()) return vertices_[static_cast<std::size_t>(mu.vertex)];
  std::string out;
  for (int e : mu.edges) {
    if (!out.empty()) out += ".";
    out += edges_[static_cast<std::size_t>(e)].name;
  }
  return out;
}

ViolationReport KGraph::check_factorization(int radius) const {
  ViolationReport report("kgraph-factorization");
  // Swaps invert each other.
  for (const auto& [bf, rb] : swap_br_) {
    report.add_checked();
    auto it = swap_rb_.find(rb);
    if (it == swap_rb_.end() || it->second != bf) {
      report.add_violation("swap-bijection",
                           edges_[static_cast<std::size_t>(bf.first)].name + "." +
                               edges_[static_cast<std::size_t>(bf.second)].name,
                           1.0);
    }
  }
  // Factor/compose coherence on the ball.
  std::vector<Elem::IntVec> degrees;
  std::function<void(Elem::IntVec&, int, int)> gen = [&](Elem::IntVec& cur,
                                                         int pos, int rem) {
    if (pos == rank_) {
      degrees.push_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      gen(cur, pos + 1, rem - v);
    }
  };
  Elem::IntVec cur(static_cast<std::size_t>(rank_), 0);
  gen(cur, 0, radius);
  for (const auto& d : degrees) {
    for (const Path& mu : morphisms(d)) {
      // Every split refactors to mu.
      std::vector<Elem::IntVec> splits;
      Elem::IntVec s(static_cast<std::size_t>(rank_), 0);
      std::function<void(int)> gen_split = [&](int pos) {
        if (pos == rank_) {
          splits.push_back(s);
          return;
        }
        for (int v = 0; v <= d[static_cast<std::size_t>(pos)]; ++v) {
          s[static_cast<std::size_t>(pos)] = v;
          gen_split(pos + 1);
        }
      };
      gen_split(0);
      for (const auto& d1 : splits) {
        report.add_checked();
        auto [a, b] = factor(mu, d1);
        if (!(compose(a, b) == mu) || degree_of(a) != d1) {
          report.add_violation("refactor", path_name(mu), 1.0);
          continue;
        }
        if (source_of(a) != range_of(b)) {
          report.add_violation("factor-endpoints", path_name(mu), 1.0);
        }
      }
    }
  }
  // Associativity of composition on short paths.
  std::vector<Path> shorts;
  for (const auto& d : degrees) {
    std::int64_t total = 0;
    for (auto v : d) total += v;
    if (total > (radius + 1) / 2) continue;
    for (const Path& mu : morphisms(d)) shorts.push_back(mu);
  }
  for (const Path& a : shorts) {
    for (const Path& b : shorts) {
      if (source_of(a) != range_of(b)) continue;
      for (const Path& c : shorts) {
        if (source_of(b) != range_of(c)) continue;
        std::int64_t total = 0;
        for (auto v : degree_of(a)) total += v;
        for (auto v : degree_of(b)) total += v;
        for (auto v : degree_of(c)) total += v;
        if (total > radius) continue;
        report.add_checked();
        if (!(compose(compose(a, b), c) == compose(a, compose(b, c)))) {
          report.add_violation("associativity",
                               path_name(a) + "|" + path_name(b) + "|" +
                                   path_name(c),
                               1.0);
        }
      }
    }
  }
  return report;
}

std::shared_ptr<const KGraph> KGraph::from_graph(
    std::vector<std::string> vertices,
    std::vector<std::tuple<std::string, std::string, std::string>> edges) {
  std::vector<Edge> out;
  KGraph probe(1, vertices, {});
  for (auto& [name, range, source] : edges) {
    Edge e;
    e.name = name;
    e.range = probe.vertex_index(range);
    e.source = probe.vertex_index(source);
    e.dir = 0;
    out.push_back(std::move(e));
  }
  return std::make_shared<KGraph>(1, std::move(vertices), std::move(out));
}

SelfSimilarAction::SelfSimilarAction(
    std::shared_ptr<const KGraph> graph, std::shared_ptr<const Group> group,
    std::map<std::pair<Elem, int>, int> vertex_action,
    std::map<std::pair<Elem, int>, std::pair<int, Elem>> edge_action)
    : graph_(std::move(graph)),
      group_(std::move(group)),
      vertex_action_(std::move(vertex_action)),
      edge_action_(std::move(edge_action)) {
  if (!group_->finite()) {
    throw ConstructionError("self-similar actions here require finite groups");
  }
  // Identity rows are implicit; other rows must be total and color/degree
  // preserving.
  for (const Elem& g : group_->elements()) {
    if (g == group_->identity()) continue;
    for (int v = 0; v < graph_->num_vertices(); ++v) {
      if (!vertex_action_.count({g, v})) {
        throw ConstructionError("vertex action missing at " + g.to_string());
      }
    }
    for (std::size_t e = 0; e < graph_->edges().size(); ++e) {
      auto it = edge_action_.find({g, static_cast<int>(e)});
      if (it == edge_action_.end()) {
        throw ConstructionError("edge action missing at " + g.to_string());
      }
      const auto& [img, res] = it->second;
      if (graph_->edges()[static_cast<std::size_t>(img)].dir !=
          graph_->edges()[e].dir) {
        throw ConstructionError("edge action must preserve directions");
      }
      (void)res;
    }
  }
}

int SelfSimilarAction::act_vertex(const Elem& g, int v) const {
  if (g == group_->identity()) return v;
  auto it = vertex_action_.find({g, v});
  if (it == vertex_action_.end()) {
    throw DomainError("vertex action missing");
  }
  return it->second;
}

std::pair<KGraph::Path, Elem> SelfSimilarAction::act_and_restrict(
    const Elem& g, const KGraph::Path& mu) const {
  if (g == group_->identity()) return {mu, g};
  if (mu.edges.empty()) {
    KGraph::Path out;
    out.vertex = act_vertex(g, mu.vertex);
    return {out, g};  // g|_v = g at vertices (degree zero)
  }
  std::vector<int> word;
  Elem state = g;
  for (int e : mu.edges) {
    if (state == group_->identity()) {
      word.push_back(e);
      continue;
    }
    auto it = edge_action_.find({state, e});
    if (it == edge_action_.end()) throw DomainError("edge action missing");
    word.push_back(it->second.first);
    state = it->second.second;
  }
  // The image word of a normal form stays color-ordered because the action
  // preserves directions; renormalize anyway for safety.
  KGraph::Path out;
  out.vertex = act_vertex(g, mu.vertex);
  out.edges = std::move(word);
  if (!out.edges.empty()) {
    out.vertex =
        graph_->edges()[static_cast<std::size_t>(out.edges.front())].range;
  }
  return {out, state};
}

KGraph::Path SelfSimilarAction::act_path(const Elem& g,
                                         const KGraph::Path& mu) const {
  return act_and_restrict(g, mu).first;
}

Elem SelfSimilarAction::restrict_path(const Elem& g,
                                      const KGraph::Path& mu) const {
  return act_and_restrict(g, mu).second;
}

ViolationReport SelfSimilarAction::check(int radius) const {
  ViolationReport report("self-similar");
  const Elem e = group_->identity();
  std::vector<Elem::IntVec> degrees;
  Elem::IntVec cur(static_cast<std::size_t>(graph_->rank()), 0);
  std::function<void(int, int)> gen = [&](int pos, int rem) {
    if (pos == graph_->rank()) {
      degrees.push_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      gen(pos + 1, rem - v);
    }
  };
  gen(0, radius);

  for (const Elem& g : group_->elements()) {
    for (const auto& d : degrees) {
      for (const auto& mu : graph_->morphisms(d)) {
        report.add_checked();
        auto [img, res] = act_and_restrict(g, mu);
        if (graph_->degree_of(img) != d) {
          report.add_violation("degree", g.to_string() + "." + graph_->path_name(mu), 1.0);
          continue;
        }
        if (graph_->range_of(img) != act_vertex(g, graph_->range_of(mu))) {
          report.add_violation("range-equivariance",
                               g.to_string() + "." + graph_->path_name(mu), 1.0);
        }
        if (graph_->source_of(img) !=
            act_vertex(res, graph_->source_of(mu))) {
          report.add_violation("source-equivariance",
                               g.to_string() + "." + graph_->path_name(mu), 1.0);
        }
        // Group laws through the extension.
        for (const Elem& h : group_->elements()) {
          report.add_checked();
          auto [img2, res2] = act_and_restrict(h, img);
          auto [img_gh, res_gh] = act_and_restrict(group_->multiply(h, g), mu);
          if (!(img2 == img_gh) ||
              res_gh != group_->multiply(res2, res) ) {
            report.add_violation("composition",
                                 h.to_string() + "," + g.to_string() + " at " +
                                     graph_->path_name(mu),
                                 1.0);
          }
        }
        report.add_checked();
        auto [img_e, res_e] = act_and_restrict(e, mu);
        if (!(img_e == mu) || res_e != e) {
          report.add_violation("identity", graph_->path_name(mu), 1.0);
        }
      }
    }
  }

  // The defining recursions on composable pairs: g.(mu nu) factors as
  // (g.mu)((g|_mu).nu) with restriction (g|_mu)|_nu, through the normal
  // forms (for rank 2 this exercises the factorization swaps).
  for (const Elem& g : group_->elements()) {
    for (const auto& d1 : degrees) {
      for (const auto& d2 : degrees) {
        std::int64_t total = 0;
        for (std::size_t i = 0; i < d1.size(); ++i) total += d1[i] + d2[i];
        if (total > radius) continue;
        for (const auto& mu : graph_->morphisms(d1)) {
          auto [gmu, res_mu] = act_and_restrict(g, mu);
          for (const auto& nu : graph_->morphisms(d2)) {
            if (graph_->source_of(mu) != graph_->range_of(nu)) continue;
            report.add_checked();
            auto [whole, res_whole] =
                act_and_restrict(g, graph_->compose(mu, nu));
            auto [gnu, res_nu] = act_and_restrict(res_mu, nu);
            if (!(whole == graph_->compose(gmu, gnu)) || res_whole != res_nu) {
              report.add_violation("path-recursion",
                                   g.to_string() + " at " +
                                       graph_->path_name(mu) + "|" +
                                       graph_->path_name(nu),
                                   1.0);
            }
          }
        }
      }
    }
  }

  // Compatibility with the factorization squares: acting on the two
  // factorizations of a square gives the same morphism and restriction.
  if (graph_->rank() == 2) {
    for (const Elem& g : group_->elements()) {
      Elem::IntVec d11 = {1, 1};
      for (const auto& lam : graph_->morphisms(d11)) {
        report.add_checked();
        auto [blue, red] = graph_->factor(lam, {1, 0});
        auto [red2, blue2] = graph_->factor(lam, {0, 1});
        KGraph::Path via_br =
            graph_->compose(act_path(g, blue),
                            act_path(restrict_path(g, blue), red));
        KGraph::Path via_rb =
            graph_->compose(act_path(g, red2),
                            act_path(restrict_path(g, red2), blue2));
        if (!(via_br == via_rb)) {
          report.add_violation("square-compatibility",
                               g.to_string() + " at " + graph_->path_name(lam),
                               1.0);
        }
      }
    }
  }
  return report;
}

bool SelfSimilarAction::restriction_uniform(int radius,
                                            std::string* witness) const {
  std::vector<Elem::IntVec> degrees;
  Elem::IntVec cur(static_cast<std::size_t>(graph_->rank()), 0);
  std::function<void(int, int)> gen = [&](int pos, int rem) {
    if (pos == graph_->rank()) {
      degrees.push_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      gen(pos + 1, rem - v);
    }
  };
  gen(0, radius);
  for (const Elem& g : group_->elements()) {
    for (const auto& d : degrees) {
      const auto& morphs = graph_->morphisms(d);
      if (morphs.empty()) continue;
      Elem first = restrict_path(g, morphs.front());
      for (const auto& mu : morphs) {
        Elem res = restrict_path(g, mu);
        if (res != first) {
          if (witness) {
            *witness = g.to_string() + "|_" + graph_->path_name(morphs.front()) +
                       " = " + first.to_string() + " but " + g.to_string() +
                       "|_" + graph_->path_name(mu) + " = " + res.to_string();
          }
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace zslab
