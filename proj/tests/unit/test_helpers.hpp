#ifndef ZSLAB_TEST_HELPERS_HPP_
#define ZSLAB_TEST_HELPERS_HPP_

#include <memory>

#include "zslab/generators.hpp"

namespace zslab::testing {

inline std::shared_ptr<const KGraph> two_loop_graph() {
  return KGraph::from_graph({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}});
}

/// Z/2 swaps the two loops; restrictions are trivial.
inline std::shared_ptr<const SelfSimilarAction> loop_swap_action() {
  auto graph = two_loop_graph();
  auto z2 = make_cyclic_group(2);
  Elem g = Elem::index(1);
  Elem e = Elem::index(0);
  std::map<std::pair<Elem, int>, int> vertex_action = {{{g, 0}, 0}};
  std::map<std::pair<Elem, int>, std::pair<int, Elem>> edge_action = {
      {{g, 0}, {1, e}},
      {{g, 1}, {0, e}},
  };
  return std::make_shared<SelfSimilarAction>(graph, z2, vertex_action,
                                             edge_action);
}

/// Z/2 swaps the two loops and keeps acting down the path (g|_edge = g).
inline std::shared_ptr<const SelfSimilarAction> loop_swap_all_action() {
  auto graph = two_loop_graph();
  auto z2 = make_cyclic_group(2);
  Elem g = Elem::index(1);
  std::map<std::pair<Elem, int>, int> vertex_action = {{{g, 0}, 0}};
  std::map<std::pair<Elem, int>, std::pair<int, Elem>> edge_action = {
      {{g, 0}, {1, g}},
      {{g, 1}, {0, g}},
  };
  return std::make_shared<SelfSimilarAction>(graph, z2, vertex_action,
                                             edge_action);
}

/// Non-uniform restrictions: violates the degree-uniformity condition.
inline std::shared_ptr<const SelfSimilarAction> loop_swap_broken_action() {
  auto graph = two_loop_graph();
  auto z2 = make_cyclic_group(2);
  Elem g = Elem::index(1);
  Elem e = Elem::index(0);
  std::map<std::pair<Elem, int>, int> vertex_action = {{{g, 0}, 0}};
  std::map<std::pair<Elem, int>, std::pair<int, Elem>> edge_action = {
      {{g, 0}, {1, e}},
      {{g, 1}, {0, g}},
  };
  return std::make_shared<SelfSimilarAction>(graph, z2, vertex_action,
                                             edge_action);
}

}  // namespace zslab::testing

#endif  // ZSLAB_TEST_HELPERS_HPP_
