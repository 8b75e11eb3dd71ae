#pragma once

#include <vector>

#include "app_model.hpp"
#include "topology.hpp"
#include "types.hpp"

namespace dra {

/// Placement of the real processes. Virtual processes sit at their pins and
/// are resolved through the application, so an Assignment is just the host
/// vector for ids 1..P. Value semantics: rounds snapshot and move on.
class Assignment {
 public:
  Assignment(const AppGraph& app, std::vector<NodeId> hosts);

  NodeId host_of(ProcessId i, const AppGraph& app) const;
  NodeId host_of_real(ProcessId i) const;

  Assignment with_moved(const std::vector<ProcessId>& group, NodeId dest) const;

  int real_count() const { return static_cast<int>(hosts_.size()); }
  const std::vector<NodeId>& hosts() const { return hosts_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<NodeId> hosts_;
};

struct CostBreakdown {
  Cost exec = 0;
  Cost comm = 0;
  Cost total = 0;
  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

/// Execution cost is placement-independent: the sum of per-process costs.
Cost exec_cost(const AppGraph& app);

/// Communication cost: sum of c_ik * hops(host_i, host_k) over every ordered
/// pair, virtual endpoints included.
Cost comm_cost(const AppGraph& app, const Topology& topo, const Assignment& f);

/// Same quantity folded per unordered pair as load(i,k) * hops. Kept as an
/// independent algebraic route for the test suite.
Cost comm_cost_unordered(const AppGraph& app, const Topology& topo, const Assignment& f);

CostBreakdown total_cost(const AppGraph& app, const Topology& topo, const Assignment& f);

}  // namespace dra
