#pragma once

#include <vector>

#include "types.hpp"

namespace dra {

struct MinCutResult {
  Cost value = 0;
  /// The canonical sink side: every vertex with a residual path to the sink
  /// after the max flow. This is the unique inclusion-minimal sink side
  /// among all minimum cuts, so ties resolve to the smallest group and a
  /// vertex detached from both terminals stays with the source.
  std::vector<int> sink_side;  // ascending vertex ids, sink included
};

/// Exact integer s-t min cut on a small undirected network, via shortest
/// augmenting paths. Vertices are 0..n-1.
class FlowNetwork {
 public:
  FlowNetwork(int vertex_count, int source, int sink);

  /// Undirected edge with the given capacity in both directions.
  void add_edge(int u, int v, Cost capacity);

  MinCutResult min_cut() const;

  int vertex_count() const { return vertex_count_; }

 private:
  struct Arc {
    int from;
    int to;
    Cost cap;
  };

  int vertex_count_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;  // arc 2e and 2e+1 are each other's reverse
  std::vector<std::vector<int>> adj_;
};

}  // namespace dra
