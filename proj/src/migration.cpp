#include "migration.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"
#include "mincut.hpp"

namespace dra {

namespace {

enum class MoveKind { tree_hop, intra_cluster, inter_cluster };

MoveKind classify_move(const Topology& topo, NodeId s, NodeId d) {
  if (s == d) throw DomainError("migration: source equals destination");
  if (topo.mode() == TopologyMode::tree) {
    if (topo.hop_distance(s, d) != 1) {
      throw DomainError("migration: destination " + std::to_string(d) +
                        " is not adjacent to node " + std::to_string(s));
    }
    return MoveKind::tree_hop;
  }
  const int cs = topo.cluster_of(s);
  const int cd = topo.cluster_of(d);
  if (cs == cd) return MoveKind::intra_cluster;
  if (topo.cluster_distance(cs, cd) != 1) {
    throw DomainError("migration: cluster " + std::to_string(cd) +
                      " is not adjacent to cluster " + std::to_string(cs));
  }
  return MoveKind::inter_cluster;
}

void check_migrant(const AppGraph& app, const Assignment& f, ProcessId i, NodeId s) {
  if (!app.is_real(i)) {
    throw DomainError("migration: process " + std::to_string(i) + " is not migratable");
  }
  if (f.host_of_real(i) != s) {
    throw DomainError("migration: process " + std::to_string(i) + " is not hosted at " +
                      std::to_string(s));
  }
}

LoadSplit split_for(const AppGraph& app, const Topology& topo, const Assignment& f, ProcessId i,
                    NodeId s, NodeId d, MoveKind kind) {
  LoadSplit out;
  switch (kind) {
    case MoveKind::tree_hop:
      for (const auto& [k, volume] : app.partners(i)) {
        const NodeId hk = f.host_of(k, app);
        if (hk != s && topo.on_path(d, s, hk)) {
          out.positive += volume;
        } else {
          out.negative += volume;
        }
      }
      break;
    case MoveKind::intra_cluster:
      for (const auto& [k, volume] : app.partners(i)) {
        const NodeId hk = f.host_of(k, app);
        if (hk == d) {
          out.positive += volume;
        } else if (hk == s) {
          out.negative += volume;
        }
      }
      break;
    case MoveKind::inter_cluster: {
      const int cs = topo.cluster_of(s);
      const int cd = topo.cluster_of(d);
      for (const auto& [k, volume] : app.partners(i)) {
        const int ck = topo.cluster_of(f.host_of(k, app));
        if (ck != cs && topo.cluster_on_path(cd, cs, ck)) {
          out.positive += volume;
        } else {
          out.negative += volume;
        }
      }
      break;
    }
  }
  return out;
}

// Group move summary. `positive`/`negative` are what the decision rule
// weighs; `raw` is the exact communication-cost drop of moving the group to
// the concrete destination.
struct GroupEval {
  Cost positive = 0;
  Cost negative = 0;
  Cost raw = 0;
};

std::vector<ProcessId> canonical_group(const AppGraph& app, const Assignment& f,
                                       std::vector<ProcessId> group, NodeId s) {
  if (group.empty()) throw DomainError("migration: empty group");
  std::sort(group.begin(), group.end());
  for (size_t i = 0; i < group.size(); ++i) {
    if (i > 0 && group[i] == group[i - 1]) {
      throw DomainError("migration: duplicate group member " + std::to_string(group[i]));
    }
    check_migrant(app, f, group[i], s);
  }
  return group;
}

GroupEval evaluate_group(const AppGraph& app, const Topology& topo, const Assignment& f,
                         const std::vector<ProcessId>& group, NodeId s, NodeId d, MoveKind kind) {
  GroupEval out;
  Cost internal_twice = 0;
  for (ProcessId i : group) {
    const LoadSplit split = split_for(app, topo, f, i, s, d, kind);
    out.positive += split.positive;
    out.negative += split.negative;
    for (const auto& [k, volume] : app.partners(i)) {
      if (std::binary_search(group.begin(), group.end(), k)) internal_twice += volume;
    }
  }
  // Pairs inside the group travel together and stay co-located; their load
  // showed up once in each member's stay-side sum and must vanish entirely.
  out.negative -= internal_twice;

  out.raw = out.positive - out.negative;
  if (kind == MoveKind::inter_cluster) {
    // The cluster-level split prices same-cluster partners as if the move
    // walked away from them and destination-cluster partners as if it
    // arrived next to them. At server granularity both stay one hop away
    // unless they share the exact server, so correct the raw drop.
    const int cs = topo.cluster_of(s);
    const int cd = topo.cluster_of(d);
    for (ProcessId i : group) {
      for (const auto& [k, volume] : app.partners(i)) {
        if (std::binary_search(group.begin(), group.end(), k)) continue;
        const NodeId hk = f.host_of(k, app);
        const int ck = topo.cluster_of(hk);
        if (ck == cs && hk != s) out.raw += volume;  // never was on the same server
        if (ck == cd && hk != d) out.raw -= volume;  // does not land next to it
      }
    }
  }
  return out;
}

bool emission_worthy(Cost positive, Cost negative, Cost raw, const InertiaConfig& inertia) {
  return inertia.beneficial(positive, negative) && raw > 0;
}

// Exact comparison key for the inertia-adjusted gain pl - gamma*nl.
__int128 adjusted_key(Cost positive, Cost negative, const InertiaConfig& inertia) {
  return static_cast<__int128>(positive) * inertia.gamma().den -
         static_cast<__int128>(inertia.gamma().num) * negative;
}

std::vector<ProcessId> hosted_at(const AppGraph& app, const Assignment& f, NodeId s) {
  std::vector<ProcessId> out;
  for (ProcessId i = 1; i <= app.real_count(); ++i) {
    if (f.host_of_real(i) == s) out.push_back(i);
  }
  return out;
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// What one concrete group extracted from a view would do: decision loads,
// landing server, exact drop.
struct ViewEval {
  Cost positive = 0;
  Cost negative = 0;
  Cost raw = 0;
  NodeId dest = 0;
};

ViewEval eval_view_group(const DirectionView& v, const std::vector<int>& members) {
  ViewEval out;
  out.dest = v.direction;
  std::vector<char> in(v.processes.size(), 0);
  for (int m : members) {
    in[static_cast<size_t>(m)] = 1;
    out.positive += v.toward[static_cast<size_t>(m)];
    out.negative += v.stay[static_cast<size_t>(m)];
  }
  for (const auto& [a, b, load] : v.internal) {
    if (in[static_cast<size_t>(a)] && in[static_cast<size_t>(b)]) out.negative -= 2 * load;
  }
  out.raw = out.positive - out.negative;

  if (v.inter_cluster) {
    size_t best = 0;
    Cost best_score = -1;
    for (size_t c = 0; c < v.landing_candidates.size(); ++c) {
      Cost score = 0;
      for (int m : members) score += v.at_landing[static_cast<size_t>(m)][c];
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    out.dest = v.landing_candidates[best];
    // Cluster-level prices assumed the move leaves every same-cluster
    // partner and lands next to every target-cluster partner; at server
    // granularity only the chosen landing server is truly adjacent.
    for (int m : members) {
      out.raw += v.released[static_cast<size_t>(m)];
      Cost in_target = 0;
      for (size_t c = 0; c < v.landing_candidates.size(); ++c) {
        in_target += v.at_landing[static_cast<size_t>(m)][c];
      }
      out.raw -= in_target - v.at_landing[static_cast<size_t>(m)][best];
    }
  }
  return out;
}

std::optional<MigrationProposal> pick_single_from_view(const DirectionView& v,
                                                       const InertiaConfig& inertia) {
  std::optional<MigrationProposal> best;
  __int128 best_key = 0;
  for (size_t m = 0; m < v.processes.size(); ++m) {
    const ViewEval eval = eval_view_group(v, {static_cast<int>(m)});
    if (!emission_worthy(eval.positive, eval.negative, eval.raw, inertia)) continue;
    const __int128 key = adjusted_key(eval.positive, eval.negative, inertia);
    if (!best || key > best_key || (key == best_key && eval.raw > best->raw_benefit)) {
      best = MigrationProposal{{v.processes[m]}, v.source,      eval.dest,
                               eval.positive,    eval.negative, eval.raw};
      best_key = key;
    }
  }
  return best;
}

std::optional<MigrationProposal> pick_group_from_view(const DirectionView& v,
                                                      const InertiaConfig& inertia) {
  const int m = static_cast<int>(v.processes.size());
  if (m == 0) return std::nullopt;

  // Step 3 anchor: stay-side load less the co-hosted share, which the
  // pairwise edges price instead.
  std::vector<Cost> anchor = v.stay;
  for (const auto& [a, b, load] : v.internal) {
    anchor[static_cast<size_t>(a)] -= load;
    anchor[static_cast<size_t>(b)] -= load;
  }
  Cost pull_total = 0;
  for (int i = 0; i < m; ++i) {
    if (anchor[static_cast<size_t>(i)] < 0) {
      throw InternalError("stay-side load cannot be below the co-hosted share");
    }
    pull_total += v.toward[static_cast<size_t>(i)];
  }

  // Step 4: with zero-weight edges gone, a partition detached from the
  // source terminal migrates as is; otherwise cut. Vertices 0 and 1 are the
  // source and destination terminals, process index i sits at i + 2.
  DisjointSet components(m + 2);
  for (int i = 0; i < m; ++i) {
    if (anchor[static_cast<size_t>(i)] > 0) components.unite(0, i + 2);
    if (v.toward[static_cast<size_t>(i)] > 0) components.unite(1, i + 2);
  }
  for (const auto& [a, b, load] : v.internal) {
    (void)load;
    components.unite(a + 2, b + 2);
  }

  std::vector<int> members;
  if (components.find(0) != components.find(1)) {
    const int dest_root = components.find(1);
    for (int i = 0; i < m; ++i) {
      if (components.find(i + 2) == dest_root) members.push_back(i);
    }
    if (members.empty()) return std::nullopt;
  } else {
    FlowNetwork net(m + 2, 0, 1);
    for (int i = 0; i < m; ++i) {
      if (v.toward[static_cast<size_t>(i)] > 0) {
        net.add_edge(1, i + 2, v.toward[static_cast<size_t>(i)]);
      }
      if (anchor[static_cast<size_t>(i)] > 0) {
        net.add_edge(0, i + 2, anchor[static_cast<size_t>(i)]);
      }
    }
    for (const auto& [a, b, load] : v.internal) net.add_edge(a + 2, b + 2, load);
    const MinCutResult cut = net.min_cut();
    for (int vertex : cut.sink_side) {
      if (vertex >= 2) members.push_back(vertex - 2);
    }
    if (members.empty()) return std::nullopt;
    const ViewEval check = eval_view_group(v, members);
    if (check.positive - check.negative != pull_total - cut.value) {
      throw InternalError("cut value disagrees with the group benefit");
    }
  }

  const ViewEval eval = eval_view_group(v, members);
  if (!emission_worthy(eval.positive, eval.negative, eval.raw, inertia)) return std::nullopt;
  std::vector<ProcessId> group;
  for (int i : members) group.push_back(v.processes[static_cast<size_t>(i)]);
  return MigrationProposal{group, v.source, eval.dest, eval.positive, eval.negative, eval.raw};
}

}  // namespace

InertiaConfig::InertiaConfig(Ratio gamma) : gamma_(gamma) {
  if (gamma_.den <= 0 || gamma_.num < gamma_.den) {
    throw ConfigError("inertia factor must be at least 1");
  }
}

bool InertiaConfig::beneficial(Cost positive, Cost negative) const {
  return static_cast<__int128>(positive) * gamma_.den >
         static_cast<__int128>(gamma_.num) * negative;
}

LoadSplit single_loads(const AppGraph& app, const Topology& topo, const Assignment& f, ProcessId i,
                       NodeId s, NodeId d) {
  const MoveKind kind = classify_move(topo, s, d);
  check_migrant(app, f, i, s);
  return split_for(app, topo, f, i, s, d, kind);
}

Cost positive_load(const AppGraph& app, const Topology& topo, const Assignment& f, ProcessId i,
                   NodeId s, NodeId d) {
  return single_loads(app, topo, f, i, s, d).positive;
}

Cost negative_load(const AppGraph& app, const Topology& topo, const Assignment& f, ProcessId i,
                   NodeId s, NodeId d) {
  return single_loads(app, topo, f, i, s, d).negative;
}

LoadSplit hierarchical_loads(const AppGraph& app, const Topology& topo, const Assignment& f,
                             ProcessId i, NodeId s, NodeId d) {
  if (classify_move(topo, s, d) != MoveKind::intra_cluster) {
    throw DomainError("hierarchical_loads: servers must share a cluster");
  }
  check_migrant(app, f, i, s);
  return split_for(app, topo, f, i, s, d, MoveKind::intra_cluster);
}

BenefitReport benefit(const AppGraph& app, const Topology& topo, const Assignment& f, ProcessId i,
                      NodeId s, NodeId d, const InertiaConfig& inertia) {
  return super_benefit(app, topo, f, {i}, s, d, inertia);
}

LoadSplit super_loads(const AppGraph& app, const Topology& topo, const Assignment& f,
                      const std::vector<ProcessId>& group, NodeId s, NodeId d) {
  const MoveKind kind = classify_move(topo, s, d);
  const auto members = canonical_group(app, f, group, s);
  const GroupEval eval = evaluate_group(app, topo, f, members, s, d, kind);
  return {eval.positive, eval.negative};
}

BenefitReport super_benefit(const AppGraph& app, const Topology& topo, const Assignment& f,
                            const std::vector<ProcessId>& group, NodeId s, NodeId d,
                            const InertiaConfig& inertia) {
  const MoveKind kind = classify_move(topo, s, d);
  const auto members = canonical_group(app, f, group, s);
  const GroupEval eval = evaluate_group(app, topo, f, members, s, d, kind);
  BenefitReport report;
  report.positive = eval.positive;
  report.negative = eval.negative;
  report.raw = eval.raw;
  report.beneficial = emission_worthy(eval.positive, eval.negative, eval.raw, inertia);
  return report;
}

DirectionView build_direction_view(const AppGraph& app, const Topology& topo, const Assignment& f,
                                   NodeId s, NodeId d) {
  const MoveKind kind = classify_move(topo, s, d);
  DirectionView v;
  v.source = s;
  v.direction = d;
  v.inter_cluster = kind == MoveKind::inter_cluster;
  v.processes = hosted_at(app, f, s);

  for (ProcessId i : v.processes) {
    const LoadSplit split = split_for(app, topo, f, i, s, d, kind);
    v.toward.push_back(split.positive);
    v.stay.push_back(split.negative);
  }
  for (size_t a = 0; a < v.processes.size(); ++a) {
    for (size_t b = a + 1; b < v.processes.size(); ++b) {
      const Volume load = app.load(v.processes[a], v.processes[b]);
      if (load > 0) v.internal.emplace_back(static_cast<int>(a), static_cast<int>(b), load);
    }
  }

  if (v.inter_cluster) {
    const int cs = topo.cluster_of(s);
    const int cd = topo.cluster_of(d);
    v.landing_candidates = topo.servers_of(cd);
    for (ProcessId i : v.processes) {
      std::vector<Cost> row(v.landing_candidates.size(), 0);
      Cost released = 0;
      for (const auto& [k, volume] : app.partners(i)) {
        const NodeId hk = f.host_of(k, app);
        const int ck = topo.cluster_of(hk);
        if (ck == cs && hk != s) released += volume;
        if (ck == cd) row[static_cast<size_t>(hk - v.landing_candidates.front())] += volume;
      }
      v.at_landing.push_back(std::move(row));
      v.released.push_back(released);
    }
  }
  return v;
}

std::optional<MigrationProposal> pick_from_view(const DirectionView& view,
                                                const InertiaConfig& inertia, bool singles_only) {
  if (singles_only) return pick_single_from_view(view, inertia);
  return pick_group_from_view(view, inertia);
}

MinCutGraph build_mincut_graph(const AppGraph& app, const Topology& topo, const Assignment& f,
                               NodeId s, NodeId d) {
  const DirectionView v = build_direction_view(app, topo, f, s, d);
  MinCutGraph g;
  g.source = s;
  g.dest = d;
  g.processes = v.processes;
  g.dest_weight = v.toward;
  g.source_weight = v.stay;
  for (const auto& [a, b, load] : v.internal) {
    g.source_weight[static_cast<size_t>(a)] -= load;
    g.source_weight[static_cast<size_t>(b)] -= load;
  }
  for (size_t i = 0; i < g.processes.size(); ++i) {
    if (g.source_weight[i] < 0) {
      throw InternalError("stay-side load cannot be below the co-hosted share");
    }
  }
  g.internal = v.internal;
  return g;
}

std::string MinCutGraph::to_dot() const {
  std::string dot = "graph selection {\n";
  dot += "  s [label=\"location " + std::to_string(source) + "\", shape=box];\n";
  dot += "  t [label=\"location " + std::to_string(dest) + "\", shape=box];\n";
  for (size_t i = 0; i < processes.size(); ++i) {
    const std::string name = "p" + std::to_string(processes[i]);
    dot += "  " + name + ";\n";
    if (dest_weight[i] > 0) {
      dot += "  " + name + " -- t [label=" + std::to_string(dest_weight[i]) + "];\n";
    }
    if (source_weight[i] > 0) {
      dot += "  " + name + " -- s [label=" + std::to_string(source_weight[i]) + "];\n";
    }
  }
  for (const auto& [a, b, load] : internal) {
    dot += "  p" + std::to_string(processes[static_cast<size_t>(a)]) + " -- p" +
           std::to_string(processes[static_cast<size_t>(b)]) + " [label=" + std::to_string(load) +
           "];\n";
  }
  dot += "}\n";
  return dot;
}

namespace {

// Global-state wrapper around the view kernel. The audit recomputes the
// move's effect from the full assignment and must agree with what the view
// concluded.
std::optional<MigrationProposal> pick_for_direction(const AppGraph& app, const Topology& topo,
                                                    const Assignment& f, NodeId s, NodeId d,
                                                    const InertiaConfig& inertia,
                                                    bool singles_only) {
  const DirectionView view = build_direction_view(app, topo, f, s, d);
  auto proposal = pick_from_view(view, inertia, singles_only);
  if (proposal) {
    const MoveKind kind = classify_move(topo, s, proposal->dest);
    const GroupEval audit =
        evaluate_group(app, topo, f, proposal->group, s, proposal->dest, kind);
    if (audit.raw != proposal->raw_benefit || audit.positive != proposal->positive ||
        audit.negative != proposal->negative) {
      throw InternalError("view decision disagrees with global accounting");
    }
  }
  return proposal;
}

}  // namespace

std::optional<MigrationProposal> best_super_process(const AppGraph& app, const Topology& topo,
                                                    const Assignment& f, NodeId s, NodeId d,
                                                    const InertiaConfig& inertia) {
  return pick_for_direction(app, topo, f, s, d, inertia, false);
}

std::optional<MigrationProposal> best_single_process(const AppGraph& app, const Topology& topo,
                                                     const Assignment& f, NodeId s, NodeId d,
                                                     const InertiaConfig& inertia) {
  return pick_for_direction(app, topo, f, s, d, inertia, true);
}

std::optional<MigrationProposal> prune_for_capacity(const AppGraph& app, const Topology& topo,
                                                    const Assignment& f,
                                                    const MigrationProposal& proposal,
                                                    int dest_free_slots,
                                                    const InertiaConfig& inertia) {
  if (dest_free_slots <= 0) return std::nullopt;
  const MoveKind kind = classify_move(topo, proposal.source, proposal.dest);
  auto group = canonical_group(app, f, proposal.group, proposal.source);
  if (static_cast<int>(group.size()) <= dest_free_slots) return proposal;

  while (static_cast<int>(group.size()) > dest_free_slots) {
    std::vector<ProcessId> best_rest;
    Cost best_raw = 0;
    bool found = false;
    for (size_t drop = 0; drop < group.size(); ++drop) {
      std::vector<ProcessId> rest;
      rest.reserve(group.size() - 1);
      for (size_t i = 0; i < group.size(); ++i) {
        if (i != drop) rest.push_back(group[i]);
      }
      const GroupEval eval =
          evaluate_group(app, topo, f, rest, proposal.source, proposal.dest, kind);
      if (!found || eval.raw > best_raw) {
        best_rest = std::move(rest);
        best_raw = eval.raw;
        found = true;
      }
    }
    group = std::move(best_rest);
  }

  const GroupEval eval = evaluate_group(app, topo, f, group, proposal.source, proposal.dest, kind);
  if (!emission_worthy(eval.positive, eval.negative, eval.raw, inertia)) return std::nullopt;
  return MigrationProposal{group,         proposal.source, proposal.dest,
                           eval.positive, eval.negative,   eval.raw};
}

std::vector<NodeId> candidate_destinations(const Topology& topo, NodeId s) {
  std::vector<NodeId> out;
  if (topo.mode() == TopologyMode::tree) return topo.neighbors(s);
  for (int cluster : topo.neighbor_clusters(topo.cluster_of(s))) {
    out.push_back(topo.servers_of(cluster).front());
  }
  for (NodeId peer : topo.neighbors(s)) out.push_back(peer);
  return out;
}

bool process_at_center_of_gravity(const AppGraph& app, const Topology& topo, const Assignment& f,
                                  ProcessId i, const InertiaConfig& inertia) {
  return group_at_center_of_gravity(app, topo, f, {i}, inertia);
}

bool group_at_center_of_gravity(const AppGraph& app, const Topology& topo, const Assignment& f,
                                const std::vector<ProcessId>& group,
                                const InertiaConfig& inertia) {
  if (group.empty()) throw DomainError("center of gravity: empty group");
  const NodeId s = f.host_of_real(group.front());
  const auto members = canonical_group(app, f, group, s);
  for (NodeId d : candidate_destinations(topo, s)) {
    const MoveKind kind = classify_move(topo, s, d);
    std::vector<NodeId> targets{d};
    if (kind == MoveKind::inter_cluster) targets = topo.servers_of(topo.cluster_of(d));
    for (NodeId target : targets) {
      const GroupEval eval = evaluate_group(app, topo, f, members, s, target, kind);
      if (emission_worthy(eval.positive, eval.negative, eval.raw, inertia)) return false;
    }
  }
  return true;
}

bool node_balanced(const AppGraph& app, const Topology& topo, const Assignment& f, NodeId s,
                   const InertiaConfig& inertia) {
  for (NodeId d : candidate_destinations(topo, s)) {
    if (best_super_process(app, topo, f, s, d, inertia)) return false;
  }
  return true;
}

}  // namespace dra
