#include "cost.hpp"

#include <string>

#include "errors.hpp"

namespace dra {

Assignment::Assignment(const AppGraph& app, std::vector<NodeId> hosts) : hosts_(std::move(hosts)) {
  std::vector<std::string> issues;
  if (static_cast<int>(hosts_.size()) != app.real_count()) {
    issues.push_back("assignment must place every real process exactly once");
  }
  for (size_t i = 0; i < hosts_.size(); ++i) {
    if (hosts_[i] < 1 || hosts_[i] > app.location_count()) {
      issues.push_back("process " + std::to_string(i + 1) + ": unknown location " +
                       std::to_string(hosts_[i]));
    }
  }
  if (!issues.empty()) throw ValidationError(issues);
}

NodeId Assignment::host_of_real(ProcessId i) const {
  if (i < 1 || i > real_count()) {
    throw DomainError("host_of_real: unknown real process " + std::to_string(i));
  }
  return hosts_[i - 1];
}

NodeId Assignment::host_of(ProcessId i, const AppGraph& app) const {
  if (app.is_real(i)) return host_of_real(i);
  return app.pin_of(i);
}

Assignment Assignment::with_moved(const std::vector<ProcessId>& group, NodeId dest) const {
  Assignment next = *this;
  for (ProcessId i : group) {
    if (i < 1 || i > real_count()) {
      throw DomainError("with_moved: unknown real process " + std::to_string(i));
    }
    next.hosts_[i - 1] = dest;
  }
  return next;
}

Cost exec_cost(const AppGraph& app) { return app.exec_total(); }

Cost comm_cost(const AppGraph& app, const Topology& topo, const Assignment& f) {
  Cost total = 0;
  for (const auto& e : app.entries()) {
    total += e.bytes * topo.hop_distance(f.host_of(e.from, app), f.host_of(e.to, app));
  }
  return total;
}

Cost comm_cost_unordered(const AppGraph& app, const Topology& topo, const Assignment& f) {
  Cost total = 0;
  for (ProcessId i = 1; i <= app.process_count(); ++i) {
    for (const auto& [k, volume] : app.partners(i)) {
      if (k < i) continue;  // each unordered pair once
      total += volume * topo.hop_distance(f.host_of(i, app), f.host_of(k, app));
    }
  }
  return total;
}

CostBreakdown total_cost(const AppGraph& app, const Topology& topo, const Assignment& f) {
  CostBreakdown out;
  out.exec = exec_cost(app);
  out.comm = comm_cost(app, topo, f);
  out.total = out.exec + out.comm;
  return out;
}

}  // namespace dra
