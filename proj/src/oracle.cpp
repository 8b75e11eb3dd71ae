#include "oracle.hpp"

#include <algorithm>
#include <queue>

#include "errors.hpp"

namespace dra {

namespace {

/// Breadth-first distances over an adjacency list, 1-based vertices.
std::vector<std::vector<int>> bfs_all(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(n + 1));
  for (const auto& [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n) throw DomainError("oracle: edge endpoint out of range");
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);
  }
  std::vector<std::vector<int>> dist(static_cast<size_t>(n + 1),
                                     std::vector<int>(static_cast<size_t>(n + 1), -1));
  for (int from = 1; from <= n; ++from) {
    auto& d = dist[static_cast<size_t>(from)];
    d[static_cast<size_t>(from)] = 0;
    std::queue<int> frontier;
    frontier.push(from);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : adj[static_cast<size_t>(u)]) {
        if (d[static_cast<size_t>(v)] < 0) {
          d[static_cast<size_t>(v)] = d[static_cast<size_t>(u)] + 1;
          frontier.push(v);
        }
      }
    }
    for (int v = 1; v <= n; ++v) {
      if (d[static_cast<size_t>(v)] < 0) throw DomainError("oracle: topology is not connected");
    }
  }
  return dist;
}

}  // namespace

IndependentMetric::IndependentMetric(const TopologySpec& spec, const AppGraph& app) {
  locations_ = spec.location_count();
  real_ = app.real_count();
  hierarchical_ = spec.mode == TopologyMode::hierarchical;
  servers_per_cluster_ = hierarchical_ ? spec.servers_per_cluster : 1;
  dist_ = bfs_all(spec.node_count, spec.edges);
  if (locations_ != app.location_count()) {
    throw DomainError("oracle: topology and application disagree on locations");
  }
  for (ProcessId i = real_ + 1; i <= app.process_count(); ++i) {
    virtual_place_.push_back(app.pin_of(i));
  }
  // One flat record per communicating pair; the placement loop touches
  // nothing else.
  const int n = app.process_count();
  for (ProcessId a = 1; a <= n; ++a) {
    for (ProcessId b = a + 1; b <= n; ++b) {
      const Volume load = app.traffic_between(a, b) + app.traffic_between(b, a);
      if (load > 0) pairs_.push_back({a, b, load});
    }
  }
}

int IndependentMetric::cluster_of(NodeId loc) const {
  return (loc - 1) / servers_per_cluster_ + 1;
}

std::vector<NodeId> IndependentMetric::cluster_servers(int cluster) const {
  std::vector<NodeId> out;
  for (int s = 1; s <= servers_per_cluster_; ++s) {
    out.push_back((cluster - 1) * servers_per_cluster_ + s);
  }
  return out;
}

int IndependentMetric::hops(NodeId x, NodeId y) const {
  if (x < 1 || x > locations_ || y < 1 || y > locations_) {
    throw DomainError("oracle: location out of range");
  }
  if (!hierarchical_) return dist_[static_cast<size_t>(x)][static_cast<size_t>(y)];
  if (x == y) return 0;
  const int cx = cluster_of(x);
  const int cy = cluster_of(y);
  if (cx == cy) return 1;
  return dist_[static_cast<size_t>(cx)][static_cast<size_t>(cy)];
}

NodeId IndependentMetric::place_of(ProcessId i, const std::vector<NodeId>& hosts) const {
  if (i <= real_) return hosts[static_cast<size_t>(i - 1)];
  return virtual_place_[static_cast<size_t>(i - real_ - 1)];
}

Cost IndependentMetric::comm(const std::vector<NodeId>& hosts) const {
  if (static_cast<int>(hosts.size()) != real_) {
    throw DomainError("oracle: placement size does not match the process count");
  }
  Cost total = 0;
  for (const Pair& p : pairs_) {
    total += p.load * hops(place_of(p.a, hosts), place_of(p.b, hosts));
  }
  return total;
}

OptimalPlacement optimal_assignment(const IndependentMetric& metric, const OracleBudget& budget) {
  const int locations = metric.location_count();
  const int real = metric.real_count();
  __int128 space = 1;
  for (int i = 0; i < real; ++i) {
    space *= locations;
    if (space > budget.assignments) {
      throw BudgetExceeded("placement enumeration over budget: " + std::to_string(locations) +
                           "^" + std::to_string(real) + " exceeds " +
                           std::to_string(budget.assignments));
    }
  }

  std::vector<NodeId> hosts(static_cast<size_t>(real), 1);
  OptimalPlacement best{hosts, metric.comm(hosts)};
  // Odometer over host vectors in lexicographic order; strict improvement
  // keeps the first and therefore smallest optimum.
  while (true) {
    int pos = real - 1;
    while (pos >= 0 && hosts[static_cast<size_t>(pos)] == locations) {
      hosts[static_cast<size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++hosts[static_cast<size_t>(pos)];
    const Cost comm = metric.comm(hosts);
    if (comm < best.comm) best = {hosts, comm};
  }
  return best;
}

std::optional<GroupPick> best_group_by_enumeration(const IndependentMetric& metric,
                                                   const std::vector<NodeId>& hosts, NodeId s,
                                                   NodeId d, const OracleBudget& budget) {
  std::vector<ProcessId> resident;
  for (ProcessId i = 1; i <= metric.real_count(); ++i) {
    if (hosts[static_cast<size_t>(i - 1)] == s) resident.push_back(i);
  }
  const int m = static_cast<int>(resident.size());
  if (m == 0) return std::nullopt;
  if (m >= 63 || (std::int64_t{1} << m) > budget.subsets) {
    throw BudgetExceeded("subset enumeration over budget: 2^" + std::to_string(m) + " exceeds " +
                         std::to_string(budget.subsets));
  }

  std::vector<NodeId> landings{d};
  if (metric.hierarchical() && metric.cluster_of(s) != metric.cluster_of(d)) {
    landings = metric.cluster_servers(metric.cluster_of(d));
  }

  const Cost before = metric.comm(hosts);
  std::optional<GroupPick> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<ProcessId> group;
    for (int bit = 0; bit < m; ++bit) {
      if (mask & (std::uint64_t{1} << bit)) group.push_back(resident[static_cast<size_t>(bit)]);
    }
    for (NodeId landing : landings) {
      std::vector<NodeId> moved = hosts;
      for (ProcessId i : group) moved[static_cast<size_t>(i - 1)] = landing;
      const Cost delta = before - metric.comm(moved);
      if (delta <= 0) continue;
      const bool wins =
          !best || delta > best->delta ||
          (delta == best->delta &&
           (group.size() < best->group.size() ||
            (group.size() == best->group.size() && group < best->group)));
      if (wins) best = GroupPick{group, landing, delta};
    }
  }
  return best;
}

Cost delta_audit(const IndependentMetric& metric, const std::vector<NodeId>& hosts,
                 const std::vector<ProcessId>& group, NodeId dest) {
  std::vector<NodeId> moved = hosts;
  for (ProcessId i : group) {
    if (i < 1 || i > metric.real_count()) throw DomainError("oracle: unknown process in group");
    moved[static_cast<size_t>(i - 1)] = dest;
  }
  return metric.comm(hosts) - metric.comm(moved);
}

}  // namespace dra
