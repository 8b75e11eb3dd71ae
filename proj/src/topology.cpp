#include "topology.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "errors.hpp"

namespace dra {

namespace {

// Walks already-inserted edges to print the cycle an offending edge closes.
std::string name_cycle(const std::vector<std::vector<int>>& adj, int u, int v) {
  std::vector<int> parent(adj.size(), 0);
  std::deque<int> queue{u};
  parent[u] = u;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (x == v) break;
    for (int y : adj[x]) {
      if (parent[y] == 0) {
        parent[y] = x;
        queue.push_back(y);
      }
    }
  }
  std::string path = std::to_string(v);
  for (int x = v; x != u; x = parent[x]) {
    path += "-" + std::to_string(parent[x]);
  }
  return path + "-" + std::to_string(v);
}

struct TreeTables {
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<int>> dist;
  std::vector<std::vector<int>> next;
};

// Validates an edge list as a tree over nodes 1..n and precomputes all-pairs
// distance and first-hop tables. Every failed check is reported.
TreeTables build_tree(int n, const std::vector<std::pair<int, int>>& edges, const char* noun) {
  std::vector<std::string> issues;
  if (n < 1) {
    issues.push_back(std::string(noun) + " count must be at least 1");
    throw ValidationError(issues);
  }

  TreeTables t;
  t.adj.assign(n + 1, {});
  std::vector<int> dsu(n + 1);
  for (int i = 0; i <= n; ++i) dsu[i] = i;
  auto find = [&](int x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };

  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n) {
      issues.push_back("edge " + std::to_string(a) + "-" + std::to_string(b) +
                       " references an unknown " + noun);
      continue;
    }
    if (a == b) {
      issues.push_back("edge " + std::to_string(a) + "-" + std::to_string(b) + " is a self loop");
      continue;
    }
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) {
      issues.push_back("edge " + std::to_string(a) + "-" + std::to_string(b) + " is duplicated");
      continue;
    }
    if (find(a) == find(b)) {
      issues.push_back("edges form a cycle: " + name_cycle(t.adj, a, b));
      continue;
    }
    dsu[find(a)] = find(b);
    t.adj[a].push_back(b);
    t.adj[b].push_back(a);
  }

  if (static_cast<int>(edges.size()) != n - 1) {
    issues.push_back("a tree over " + std::to_string(n) + " " + noun + "s needs " +
                     std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));
  }
  if (issues.empty()) {
    std::string unreachable;
    std::vector<char> seen_node(n + 1, 0);
    std::deque<int> queue{1};
    seen_node[1] = 1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : t.adj[x]) {
        if (!seen_node[y]) {
          seen_node[y] = 1;
          queue.push_back(y);
        }
      }
    }
    for (int x = 1; x <= n; ++x) {
      if (!seen_node[x]) unreachable += (unreachable.empty() ? "" : ", ") + std::to_string(x);
    }
    if (!unreachable.empty()) {
      issues.push_back(std::string(noun) + "s unreachable from " + noun + " 1: " + unreachable);
    }
  }
  if (!issues.empty()) throw ValidationError(issues);

  for (auto& list : t.adj) std::sort(list.begin(), list.end());

  t.dist.assign(n + 1, std::vector<int>(n + 1, 0));
  t.next.assign(n + 1, std::vector<int>(n + 1, 0));
  for (int root = 1; root <= n; ++root) {
    std::vector<int> parent(n + 1, 0);
    std::deque<int> queue{root};
    parent[root] = root;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : t.adj[x]) {
        if (parent[y] == 0) {
          parent[y] = x;
          t.dist[y][root] = t.dist[x][root] + 1;
          queue.push_back(y);
        }
      }
    }
    // parent[x] is x's neighbor toward root, i.e. the first hop of x -> root.
    for (int x = 1; x <= n; ++x) {
      if (x != root) t.next[x][root] = parent[x];
    }
  }
  return t;
}

}  // namespace

Topology Topology::tree(int node_count, const std::vector<std::pair<int, int>>& edges) {
  TreeTables t = build_tree(node_count, edges, "node");
  Topology topo;
  topo.mode_ = TopologyMode::tree;
  topo.location_count_ = node_count;
  topo.cluster_count_ = node_count;
  topo.servers_per_cluster_ = 1;
  topo.tree_adj_ = std::move(t.adj);
  topo.dist_ = std::move(t.dist);
  topo.next_ = std::move(t.next);
  topo.location_neighbors_.assign(node_count + 1, {});
  for (int x = 1; x <= node_count; ++x) {
    topo.location_neighbors_[x].assign(topo.tree_adj_[x].begin(), topo.tree_adj_[x].end());
  }
  return topo;
}

Topology Topology::hierarchical(int cluster_count,
                                const std::vector<std::pair<int, int>>& cluster_edges,
                                int servers_per_cluster) {
  if (servers_per_cluster < 1) {
    throw ValidationError({"servers_per_cluster must be at least 1"});
  }
  TreeTables t = build_tree(cluster_count, cluster_edges, "cluster");
  Topology topo;
  topo.mode_ = TopologyMode::hierarchical;
  topo.cluster_count_ = cluster_count;
  topo.servers_per_cluster_ = servers_per_cluster;
  topo.location_count_ = cluster_count * servers_per_cluster;
  topo.tree_adj_ = std::move(t.adj);
  topo.dist_ = std::move(t.dist);
  topo.next_ = std::move(t.next);
  topo.location_neighbors_.assign(topo.location_count_ + 1, {});
  for (NodeId loc = 1; loc <= topo.location_count_; ++loc) {
    const int c = topo.cluster_of(loc);
    for (int s = 1; s <= servers_per_cluster; ++s) {
      const NodeId peer = (c - 1) * servers_per_cluster + s;
      if (peer != loc) topo.location_neighbors_[loc].push_back(peer);
    }
  }
  return topo;
}

void Topology::check_location(NodeId x, const char* what) const {
  if (x < 1 || x > location_count_) {
    throw DomainError(std::string(what) + ": unknown location " + std::to_string(x));
  }
}

void Topology::check_cluster(int c, const char* what) const {
  if (c < 1 || c > cluster_count_) {
    throw DomainError(std::string(what) + ": unknown cluster " + std::to_string(c));
  }
}

int Topology::hop_distance(NodeId x, NodeId y) const {
  check_location(x, "hop_distance");
  check_location(y, "hop_distance");
  if (mode_ == TopologyMode::tree) return dist_[x][y];
  if (x == y) return 0;
  const int cx = cluster_of(x);
  const int cy = cluster_of(y);
  return cx == cy ? 1 : dist_[cx][cy];
}

bool Topology::on_path(NodeId z, NodeId x, NodeId y) const {
  check_location(z, "on_path");
  check_location(x, "on_path");
  check_location(y, "on_path");
  if (x == y) return false;
  if (mode_ == TopologyMode::tree) {
    return dist_[x][z] + dist_[z][y] == dist_[x][y];
  }
  const int cx = cluster_of(x);
  const int cy = cluster_of(y);
  if (cx == cy) return z == x || z == y;
  return cluster_on_path(cluster_of(z), cx, cy);
}

NodeId Topology::next_hop(NodeId s, NodeId d) const {
  if (mode_ != TopologyMode::tree) {
    throw DomainError("next_hop: defined on tree topologies; use cluster_next_hop");
  }
  check_location(s, "next_hop");
  check_location(d, "next_hop");
  if (s == d) throw DomainError("next_hop: source equals destination");
  return next_[s][d];
}

const std::vector<NodeId>& Topology::neighbors(NodeId x) const {
  check_location(x, "neighbors");
  return location_neighbors_[x];
}

int Topology::cluster_of(NodeId loc) const {
  check_location(loc, "cluster_of");
  return (loc - 1) / servers_per_cluster_ + 1;
}

std::vector<NodeId> Topology::servers_of(int cluster) const {
  check_cluster(cluster, "servers_of");
  std::vector<NodeId> out;
  for (int s = 1; s <= servers_per_cluster_; ++s) {
    out.push_back((cluster - 1) * servers_per_cluster_ + s);
  }
  return out;
}

std::vector<int> Topology::neighbor_clusters(int cluster) const {
  check_cluster(cluster, "neighbor_clusters");
  return tree_adj_[cluster];
}

int Topology::cluster_distance(int cx, int cy) const {
  check_cluster(cx, "cluster_distance");
  check_cluster(cy, "cluster_distance");
  return dist_[cx][cy];
}

bool Topology::cluster_on_path(int cz, int cx, int cy) const {
  check_cluster(cz, "cluster_on_path");
  check_cluster(cx, "cluster_on_path");
  check_cluster(cy, "cluster_on_path");
  if (cx == cy) return false;
  return dist_[cx][cz] + dist_[cz][cy] == dist_[cx][cy];
}

int Topology::cluster_next_hop(int cs, int cd) const {
  check_cluster(cs, "cluster_next_hop");
  check_cluster(cd, "cluster_next_hop");
  if (cs == cd) throw DomainError("cluster_next_hop: source equals destination");
  return next_[cs][cd];
}

}  // namespace dra
