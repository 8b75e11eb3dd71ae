#pragma once

#include <utility>
#include <vector>

#include "types.hpp"

namespace dra {

enum class TopologyMode { tree, hierarchical };

/// The network the application runs on: either a tree of nodes, or a tree of
/// clusters where each cluster holds a fixed number of fully connected
/// servers. Locations are flat 1-based ids in both modes.
///
/// Distances are precomputed once; every query is a table lookup.
/// Hierarchical distance: 0 on the same server, 1 between distinct servers
/// of one cluster, and the cluster-tree hop count otherwise.
class Topology {
 public:
  static Topology tree(int node_count, const std::vector<std::pair<int, int>>& edges);
  static Topology hierarchical(int cluster_count,
                               const std::vector<std::pair<int, int>>& cluster_edges,
                               int servers_per_cluster);

  TopologyMode mode() const { return mode_; }
  int location_count() const { return location_count_; }
  int cluster_count() const { return cluster_count_; }
  int servers_per_cluster() const { return servers_per_cluster_; }

  int hop_distance(NodeId x, NodeId y) const;

  /// True iff z lies on the unique path between x and y, endpoints included.
  /// False whenever x == y: co-located endpoints use no link at all.
  /// Hierarchical mode answers at cluster granularity.
  bool on_path(NodeId z, NodeId x, NodeId y) const;

  /// First hop on the path from s to d. Tree mode only; s != d.
  NodeId next_hop(NodeId s, NodeId d) const;

  /// Tree mode: adjacent nodes. Hierarchical mode: the other servers of the
  /// same cluster. Always ascending.
  const std::vector<NodeId>& neighbors(NodeId x) const;

  // Cluster-level queries (hierarchical mode).
  int cluster_of(NodeId loc) const;
  std::vector<NodeId> servers_of(int cluster) const;
  std::vector<int> neighbor_clusters(int cluster) const;
  int cluster_distance(int cx, int cy) const;
  bool cluster_on_path(int cz, int cx, int cy) const;
  int cluster_next_hop(int cs, int cd) const;

 private:
  Topology() = default;

  void check_location(NodeId x, const char* what) const;
  void check_cluster(int c, const char* what) const;

  TopologyMode mode_ = TopologyMode::tree;
  int location_count_ = 0;
  int cluster_count_ = 0;
  int servers_per_cluster_ = 1;

  // Tables over the underlying tree (nodes in tree mode, clusters otherwise),
  // indexed 1-based.
  std::vector<std::vector<int>> dist_;
  std::vector<std::vector<int>> next_;
  std::vector<std::vector<int>> tree_adj_;

  // Per-location neighbor lists as exposed by neighbors().
  std::vector<std::vector<NodeId>> location_neighbors_;
};

}  // namespace dra
