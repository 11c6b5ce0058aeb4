// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace icsched {

/// Directed interference graph: one edge (sigma[i], i) per link with an
/// interferer. The undirected view is a multigraph; a mutual pair i <-> j
/// contributes two parallel edges, matching the two distinct factor-graph
/// paths between x_i and x_j.
struct InterferenceGraph {
  int n = 0;
  std::vector<std::pair<int, int>> directed_edges;  // (source, target)
};

InterferenceGraph build_graph(const std::vector<int>& sigma);

struct ComponentStats {
  std::vector<int> vertices;
  int edge_count = 0;
  int cycle_count = 0;  // edges - vertices + 1, parallel edges distinct
};

// Connected components of the undirected multigraph with per-component
// cycle counts. Isolated vertices form components with zero edges.
std::vector<ComponentStats> component_cycle_counts(const InterferenceGraph& g);

struct CycleCheck {
  bool ok = true;
  std::optional<ComponentStats> witness;  // first offending component
};

// Every component must have at most one cycle. Holds for any graph built
// from a valid sigma map (in-degree <= 1); the witness path exists as a
// sanity trap and for hand-built negative controls.
CycleCheck check_single_cycle(const InterferenceGraph& g);
CycleCheck verify_single_cycle_property(const std::vector<int>& sigma);

// Plain-text directed edge list ("source target" per line, 1-based).
std::string export_edge_list(const InterferenceGraph& g);

}  // namespace icsched
