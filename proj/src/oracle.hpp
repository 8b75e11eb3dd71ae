#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "app_model.hpp"
#include "scenario.hpp"
#include "types.hpp"

namespace dra {

struct OracleBudget {
  std::int64_t assignments = 10'000'000;  // cap on locations^processes
  std::int64_t subsets = 4096;            // cap on 2^(processes at one node)
};

/// Reference yardstick for one instance. Rebuilds hop distances by its own
/// breadth-first search over the raw topology description and keeps its own
/// flat pair list, so it shares no computation with the production path it
/// is used to judge.
class IndependentMetric {
 public:
  IndependentMetric(const TopologySpec& spec, const AppGraph& app);

  int location_count() const { return locations_; }
  int real_count() const { return real_; }

  int hops(NodeId x, NodeId y) const;

  /// Communication cost of a placement, summed pair by pair from scratch.
  /// `hosts` positions the real processes; virtual ones sit at their pins.
  Cost comm(const std::vector<NodeId>& hosts) const;

  bool hierarchical() const { return hierarchical_; }
  int cluster_of(NodeId loc) const;
  std::vector<NodeId> cluster_servers(int cluster) const;

 private:
  struct Pair {
    ProcessId a = 0;
    ProcessId b = 0;
    Volume load = 0;
  };

  NodeId place_of(ProcessId i, const std::vector<NodeId>& hosts) const;

  int locations_ = 0;
  int real_ = 0;
  bool hierarchical_ = false;
  int servers_per_cluster_ = 1;
  std::vector<std::vector<int>> dist_;  // tree nodes, or clusters
  std::vector<NodeId> virtual_place_;   // virtual ordinal -> location
  std::vector<Pair> pairs_;
};

struct OptimalPlacement {
  std::vector<NodeId> hosts;
  Cost comm = 0;
};

/// Globally cheapest placement by enumerating every one of the
/// locations^processes possibilities; ties resolve to the lexicographically
/// smallest host vector. Throws BudgetExceeded rather than start a scan that
/// would blow the budget.
OptimalPlacement optimal_assignment(const IndependentMetric& metric,
                                    const OracleBudget& budget = {});

struct GroupPick {
  std::vector<ProcessId> group;
  NodeId dest = 0;
  Cost delta = 0;  // comm before minus comm after, > 0
};

/// Best set of processes to pull off location s toward d, found by trying
/// every nonempty subset of the processes hosted there (and, across
/// clusters, every landing server of d's cluster). Ties prefer the smaller
/// set, then the lexicographically smallest. Empty when nothing improves.
std::optional<GroupPick> best_group_by_enumeration(const IndependentMetric& metric,
                                                   const std::vector<NodeId>& hosts, NodeId s,
                                                   NodeId d, const OracleBudget& budget = {});

/// Exact cost change of one concrete move: full before/after difference.
Cost delta_audit(const IndependentMetric& metric, const std::vector<NodeId>& hosts,
                 const std::vector<ProcessId>& group, NodeId dest);

}  // namespace dra
