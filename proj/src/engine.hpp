#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "app_model.hpp"
#include "cost.hpp"
#include "migration.hpp"
#include "scenario.hpp"
#include "topology.hpp"

namespace dra {

enum class SchedulePolicy { sequential, concurrent };

struct RunParams {
  SchedulePolicy policy = SchedulePolicy::concurrent;
  std::optional<Ratio> gamma;  // overrides the scenario's inertia factor
  std::optional<Ratio> alpha;  // overrides the scenario's smoothing factor
  int max_rounds = 10'000;
  /// Keep the single-process mechanism even for interacting processes
  /// (comparison runs; the default selects the mechanism per node).
  bool singles_only = false;
  std::uint64_t seed = 0;  // recorded in the trace header
};

/// One node's knowledge: its hosted processes, their pairwise loads, and
/// their external loads folded per direction. Everything the node decides is
/// computed from the stored views alone; observe() is the only reader of
/// global state.
class NodeAgent {
 public:
  static NodeAgent observe(const AppGraph& app, const Topology& topo, const Assignment& f,
                           NodeId s);

  NodeId node() const { return node_; }
  const std::vector<DirectionView>& views() const { return views_; }

  /// Some co-hosted pair exchanges traffic, so the group mechanism applies.
  bool interacting() const { return interacting_; }

  /// Every per-direction candidate that passes emission.
  std::vector<MigrationProposal> propose(const InertiaConfig& inertia,
                                         bool singles_only = false) const;

  /// The round's single departing proposal: highest raw benefit, earlier
  /// direction on ties. Inter-cluster candidates take priority: a server
  /// only proposes within its cluster when no cluster-level move pays.
  std::optional<MigrationProposal> best_departure(const InertiaConfig& inertia,
                                                  bool singles_only = false) const;

 private:
  NodeId node_ = 0;
  bool interacting_ = false;
  std::vector<DirectionView> views_;
};

/// Orders proposals (raw benefit descending, then source, then group) and
/// keeps the applicable ones. Sequential mode keeps exactly the first.
/// Concurrent mode drops a proposal that shares a process with an accepted
/// one, then applies the swap guard: on trees a pair is deferred when source
/// and destination are mutual and the groups exchange traffic; between
/// clusters any traffic between the groups defers, because landing-server
/// estimates assume the partner stays put.
std::vector<MigrationProposal> schedule_round(const AppGraph& app, const Topology& topo,
                                              std::vector<MigrationProposal> proposals,
                                              SchedulePolicy policy);

struct MigrationEvent {
  int round = 0;
  std::vector<ProcessId> group;
  NodeId source = 0;
  NodeId dest = 0;
  Cost positive = 0;
  Cost negative = 0;
  Cost raw_benefit = 0;
  // Round-boundary costs; the events of one concurrent round share them.
  Cost comm_before = 0;
  Cost comm_after = 0;
};

struct TransitionRecord {
  int round = 0;   // quiescent round after which the window folded in
  int window = 0;  // 1-based index into the scenario's schedule
  Cost comm = 0;   // communication cost under the new smoothed matrix
};

struct CostRow {
  int round = 0;
  Cost exec = 0;
  Cost comm = 0;
  int migrations = 0;  // applied within this round
};

struct RunResult {
  std::vector<NodeId> final_hosts;
  bool converged = false;
  int rounds = 0;
  int migrations = 0;
  Cost initial_comm = 0;
  Cost final_comm = 0;
  Cost exec = 0;
  std::vector<MigrationEvent> events;
  std::vector<TransitionRecord> transitions;
  std::vector<CostRow> cost_rows;  // row 0 = initial state
};

/// One monitoring-window fold; a missing window keeps the traffic as is.
TrafficAverager apply_traffic_transition(const TrafficAverager& averager,
                                         const std::vector<std::vector<TrafficEntry>>& schedule,
                                         std::size_t window);

/// Rounds of observe -> propose -> schedule -> apply until a round applies
/// nothing. A quiescent round folds in the next scheduled traffic window if
/// one remains; convergence is quiescence with the schedule exhausted.
/// Stopping at max_rounds instead is reported as converged = false.
RunResult run(const Scenario& scenario, const RunParams& params = {});

/// Trace: one JSON object per line; header, then migrations and transitions
/// in round order, then the result line.
std::string trace_jsonl(const Scenario& scenario, const RunParams& params,
                        const RunResult& result);

/// Per-round cost curve: round,exec,comm,total,migrations_applied.
std::string cost_csv(const RunResult& result);

std::string assignment_json(const RunResult& result);

}  // namespace dra
