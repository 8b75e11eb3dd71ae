#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cost.hpp"

namespace dra {

/// Reluctance factor applied to the load a move walks away from. gamma = 1
/// is the neutral setting; larger values damp oscillation under shifting
/// traffic. Comparisons stay exact: pl - gamma*nl > 0 is evaluated as
/// pl*den > num*nl in wide integers.
class InertiaConfig {
 public:
  InertiaConfig() = default;
  explicit InertiaConfig(Ratio gamma);

  Ratio gamma() const { return gamma_; }
  bool neutral() const { return gamma_.num == gamma_.den; }

  /// Strict test that the weighted gain beats the weighted loss.
  bool beneficial(Cost positive, Cost negative) const;

 private:
  Ratio gamma_{1, 1};
};

/// One migration decision: move `group` from `source` to `dest`.
/// `positive`/`negative` are the loads the decision weighed (cluster
/// granularity for inter-cluster moves); `raw_benefit` is the exact drop in
/// communication cost the move causes when applied alone.
struct MigrationProposal {
  std::vector<ProcessId> group;  // ascending, nonempty
  NodeId source = 0;
  NodeId dest = 0;
  Cost positive = 0;
  Cost negative = 0;
  Cost raw_benefit = 0;
  friend bool operator==(const MigrationProposal&, const MigrationProposal&) = default;
};

struct LoadSplit {
  Cost positive = 0;
  Cost negative = 0;
};

struct BenefitReport {
  Cost positive = 0;
  Cost negative = 0;
  Cost raw = 0;          // exact comm-cost drop of this concrete move
  bool beneficial = false;  // inertia-adjusted gain, and the move really pays
};

/// Load process i (hosted at s) exchanges with partners that use d, split
/// against everything else. Tree mode wants d adjacent to s; in hierarchical
/// mode d selects either a same-cluster peer or an adjacent cluster, and
/// inter-cluster splits are computed on the cluster tree.
LoadSplit single_loads(const AppGraph& app, const Topology& topo, const Assignment& f,
                       ProcessId i, NodeId s, NodeId d);
Cost positive_load(const AppGraph& app, const Topology& topo, const Assignment& f, ProcessId i,
                   NodeId s, NodeId d);
Cost negative_load(const AppGraph& app, const Topology& topo, const Assignment& f, ProcessId i,
                   NodeId s, NodeId d);

/// Same-cluster split: load with processes on server d against load with
/// processes left behind on server s. Partners elsewhere do not move the
/// needle and are counted on neither side.
LoadSplit hierarchical_loads(const AppGraph& app, const Topology& topo, const Assignment& f,
                             ProcessId i, NodeId s, NodeId d);

BenefitReport benefit(const AppGraph& app, const Topology& topo, const Assignment& f, ProcessId i,
                      NodeId s, NodeId d, const InertiaConfig& inertia = {});

/// Group split with the internal load removed entirely: pairs inside the
/// group stay co-located, so their volume belongs on neither side.
LoadSplit super_loads(const AppGraph& app, const Topology& topo, const Assignment& f,
                      const std::vector<ProcessId>& group, NodeId s, NodeId d);

BenefitReport super_benefit(const AppGraph& app, const Topology& topo, const Assignment& f,
                            const std::vector<ProcessId>& group, NodeId s, NodeId d,
                            const InertiaConfig& inertia = {});

/// The selection network for one (s, d) direction. Terminal edges carry the
/// pull toward d (Step 2) and the anchor at s (Step 3: the stay-side load
/// less what co-hosted real processes contribute, since those may join the
/// group and the pairwise edges already price that choice). Process pairs
/// are wired with their mutual load.
struct MinCutGraph {
  NodeId source = 0;
  NodeId dest = 0;
  std::vector<ProcessId> processes;  // ascending, real processes hosted at s
  std::vector<Cost> dest_weight;
  std::vector<Cost> source_weight;
  std::vector<std::tuple<int, int, Cost>> internal;  // index pairs, load > 0

  std::string to_dot() const;
};

MinCutGraph build_mincut_graph(const AppGraph& app, const Topology& topo, const Assignment& f,
                               NodeId s, NodeId d);

/// One (source, direction) decision reduced to the numbers a node learns
/// from its own processes and its routing tables: per process the load
/// pulled toward the direction, the load anchored on the stay side, and the
/// pairwise loads among co-hosted processes. Inter-cluster directions add
/// what the node knows about the target cluster: per-server partner loads
/// (for the landing choice) and the same-cluster load a departure stops
/// carrying. A decision computed from this struct sees nothing else; that
/// is the whole locality claim of the algorithm.
struct DirectionView {
  NodeId source = 0;
  NodeId direction = 0;  // neighbor node, peer server, or a server of the adjacent cluster
  bool inter_cluster = false;
  std::vector<ProcessId> processes;  // real processes hosted at source, ascending
  std::vector<Cost> toward;          // per process: load with partners that use the direction
  std::vector<Cost> stay;            // per process: load weighed against the move
  std::vector<std::tuple<int, int, Cost>> internal;  // index pairs, load > 0

  // Inter-cluster extras, empty otherwise.
  std::vector<NodeId> landing_candidates;     // servers of the target cluster, ascending
  std::vector<std::vector<Cost>> at_landing;  // [process][candidate]: load with partners there
  std::vector<Cost> released;                 // per process: same-cluster load off this server
};

DirectionView build_direction_view(const AppGraph& app, const Topology& topo, const Assignment& f,
                                   NodeId s, NodeId d);

/// The decision kernel. Picks the best departure the view supports: the
/// canonical min-cut group, or the best single process when `singles_only`.
/// Inter-cluster picks land on the candidate server holding the most group
/// traffic, smallest id on ties. Nothing is returned when no move strictly
/// pays after inertia.
std::optional<MigrationProposal> pick_from_view(const DirectionView& view,
                                                const InertiaConfig& inertia = {},
                                                bool singles_only = false);

/// Best group to push from s toward d: min cut on the selection network,
/// with the canonical smallest cut group. Zero-weight edges are dropped
/// first; when that detaches the destination terminal, its partition
/// migrates as is and the flow computation is skipped. Returns nothing when
/// no group strictly pays. Inter-cluster directions pick the landing server
/// holding the most group traffic, smallest id on ties.
std::optional<MigrationProposal> best_super_process(const AppGraph& app, const Topology& topo,
                                                    const Assignment& f, NodeId s, NodeId d,
                                                    const InertiaConfig& inertia = {});

/// Best single process to push from s toward d, by adjusted then raw gain,
/// smallest id on ties. Returns nothing when no process strictly pays.
std::optional<MigrationProposal> best_single_process(const AppGraph& app, const Topology& topo,
                                                     const Assignment& f, NodeId s, NodeId d,
                                                     const InertiaConfig& inertia = {});

/// Shrinks a group that does not fit the destination's free slots, dropping
/// the member whose removal costs the least benefit (re-evaluated after
/// every drop, smallest id on ties). The pruned group keeps the proposal's
/// destination so the slot check stays meaningful. Nothing is returned when
/// no fitting remainder still strictly pays.
std::optional<MigrationProposal> prune_for_capacity(const AppGraph& app, const Topology& topo,
                                                    const Assignment& f,
                                                    const MigrationProposal& proposal,
                                                    int dest_free_slots,
                                                    const InertiaConfig& inertia = {});

/// Directions a migration from s may take: tree neighbors, or same-cluster
/// peers plus one representative server per adjacent cluster.
std::vector<NodeId> candidate_destinations(const Topology& topo, NodeId s);

/// No direction gives the process / the co-hosted group a strictly
/// beneficial move.
bool process_at_center_of_gravity(const AppGraph& app, const Topology& topo, const Assignment& f,
                                  ProcessId i, const InertiaConfig& inertia = {});
bool group_at_center_of_gravity(const AppGraph& app, const Topology& topo, const Assignment& f,
                                const std::vector<ProcessId>& group,
                                const InertiaConfig& inertia = {});

/// No direction lets s push any group away beneficially.
bool node_balanced(const AppGraph& app, const Topology& topo, const Assignment& f, NodeId s,
                   const InertiaConfig& inertia = {});

}  // namespace dra
