// SPDX-License-Identifier: Apache-2.0
#include "icsched/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace icsched {

namespace {

constexpr int kNone = -1;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void merge(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

InterferenceGraph build_graph(const std::vector<int>& sigma) {
  InterferenceGraph g;
  g.n = static_cast<int>(sigma.size());
  for (int i = 0; i < g.n; ++i) {
    const int s = sigma[static_cast<std::size_t>(i)];
    if (s == kNone) continue;
    if (s == i || s < 0 || s >= g.n)
      throw std::invalid_argument("invariant-violation: sigma index out of range");
    g.directed_edges.emplace_back(s, i);
  }
  return g;
}

std::vector<ComponentStats> component_cycle_counts(const InterferenceGraph& g) {
  UnionFind uf(g.n);
  for (const auto& [u, v] : g.directed_edges) uf.merge(u, v);

  // Map each root to a dense component id, in order of first appearance.
  std::vector<int> comp_of(static_cast<std::size_t>(g.n), -1);
  std::vector<ComponentStats> comps;
  for (int v = 0; v < g.n; ++v) {
    const int root = uf.find(v);
    if (comp_of[static_cast<std::size_t>(root)] < 0) {
      comp_of[static_cast<std::size_t>(root)] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(root)])].vertices.push_back(v);
  }
  // Parallel edges counted individually: the undirected view is a multigraph.
  for (const auto& [u, v] : g.directed_edges)
    ++comps[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(uf.find(u))])].edge_count;
  for (ComponentStats& c : comps)
    c.cycle_count = c.edge_count - static_cast<int>(c.vertices.size()) + 1;
  return comps;
}

CycleCheck check_single_cycle(const InterferenceGraph& g) {
  CycleCheck result;
  for (const ComponentStats& c : component_cycle_counts(g)) {
    if (c.cycle_count > 1) {
      result.ok = false;
      result.witness = c;
      return result;
    }
  }
  return result;
}

CycleCheck verify_single_cycle_property(const std::vector<int>& sigma) {
  return check_single_cycle(build_graph(sigma));
}

std::string export_edge_list(const InterferenceGraph& g) {
  std::ostringstream os;
  for (const auto& [u, v] : g.directed_edges) os << u + 1 << " " << v + 1 << "\n";
  return os.str();
}

}  // namespace icsched
