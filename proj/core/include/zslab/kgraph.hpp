#ifndef ZSLAB_KGRAPH_HPP_
#define ZSLAB_KGRAPH_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "zslab/element.hpp"
#include "zslab/group.hpp"
#include "zslab/report.hpp"

namespace zslab {

/// A higher-rank graph of rank k <= 2 with explicit factorization data.
/// Morphisms are kept in color-ordered normal form: all direction-0 edges
/// first, then direction-1 edges, as a composable path. For k = 2 the
/// squares give the unique factorization swaps in both directions.
class KGraph {
 public:
  struct Edge {
    std::string name;
    int range;   // vertex index
    int source;  // vertex index
    int dir;     // coordinate direction in [0, rank)
  };
  /// e . f = f' . e' with e, e' of direction 0 and f, f' of direction 1.
  struct Square {
    int e, f, f_alt, e_alt;
  };
  /// Edge-index path, range to source; empty path = identity at `vertex`.
  struct Path {
    int vertex = 0;  // range vertex (== the vertex itself for empty paths)
    std::vector<int> edges;

    bool operator==(const Path& o) const {
      return vertex == o.vertex && edges == o.edges;
    }
    bool operator<(const Path& o) const {
      return std::tie(vertex, edges) < std::tie(o.vertex, o.edges);
    }
  };

  KGraph(int rank, std::vector<std::string> vertices, std::vector<Edge> edges,
         std::vector<Square> squares = {});

  int rank() const { return rank_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_index(const std::string& name) const;
  int vertex_index(const std::string& name) const;

  int range_of(const Path& mu) const;
  int source_of(const Path& mu) const;
  Elem::IntVec degree_of(const Path& mu) const;

  /// All degree-d morphisms in normal form, deterministic order; cached.
  const std::vector<Path>& morphisms(const Elem::IntVec& degree) const;
  int index_of(const Path& mu) const;

  /// mu . nu (requires s(mu) = r(nu)); result normalized.
  Path compose(const Path& mu, const Path& nu) const;
  /// The unique (alpha, beta) with mu = alpha . beta and d(alpha) = d1.
  std::pair<Path, Path> factor(const Path& mu, const Elem::IntVec& d1) const;

  std::string path_name(const Path& mu) const;

  /// Factorization property on the degree ball: swaps are mutually inverse
  /// bijections, composition associates, and ranges/sources stay coherent.
  ViolationReport check_factorization(int radius) const;

  /// Path category of an ordinary directed graph (k = 1).
  static std::shared_ptr<const KGraph> from_graph(
      std::vector<std::string> vertices,
      std::vector<std::tuple<std::string, std::string, std::string>> edges);

 private:
  Path normalize(int range_vertex, const std::vector<int>& word) const;

  int rank_;
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<std::pair<int, int>, std::pair<int, int>> swap_br_;  // (e,f)->(f',e')
  std::map<std::pair<int, int>, std::pair<int, int>> swap_rb_;  // (f',e')->(e,f)
  mutable std::map<Elem::IntVec, std::vector<Path>> morphism_cache_;
  mutable std::map<Path, int> index_cache_;
};

/// A self-similar action of a finite group on a k-graph: tables for the
/// vertex and edge actions with restrictions, extended to paths through
/// g.(mu nu) = (g.mu)((g|_mu).nu) and g|_(mu nu) = (g|_mu)|_nu.
class SelfSimilarAction {
 public:
  SelfSimilarAction(std::shared_ptr<const KGraph> graph,
                    std::shared_ptr<const Group> group,
                    std::map<std::pair<Elem, int>, int> vertex_action,
                    std::map<std::pair<Elem, int>, std::pair<int, Elem>>
                        edge_action);

  const KGraph& graph() const { return *graph_; }
  std::shared_ptr<const KGraph> graph_ptr() const { return graph_; }
  const Group& group() const { return *group_; }
  std::shared_ptr<const Group> group_ptr() const { return group_; }

  int act_vertex(const Elem& g, int v) const;
  KGraph::Path act_path(const Elem& g, const KGraph::Path& mu) const;
  Elem restrict_path(const Elem& g, const KGraph::Path& mu) const;

  /// Self-similarity axioms on the degree ball: degree preservation,
  /// r(g.mu) = g.r(mu), s(g.mu) = g|_mu . s(mu), compatibility with the
  /// factorization squares, and the group laws of the extension.
  ViolationReport check(int radius) const;

  /// Whether same-degree morphisms share their restriction on the ball;
  /// returns a witnessing pair through `witness` when they do not.
  bool restriction_uniform(int radius, std::string* witness = nullptr) const;

 private:
  std::pair<KGraph::Path, Elem> act_and_restrict(const Elem& g,
                                                 const KGraph::Path& mu) const;

  std::shared_ptr<const KGraph> graph_;
  std::shared_ptr<const Group> group_;
  std::map<std::pair<Elem, int>, int> vertex_action_;
  std::map<std::pair<Elem, int>, std::pair<int, Elem>> edge_action_;
};

}  // namespace zslab

#endif  // ZSLAB_KGRAPH_HPP_
