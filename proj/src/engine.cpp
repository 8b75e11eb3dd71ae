#include "engine.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "json.hpp"

#include "errors.hpp"

namespace dra {
namespace {

bool proposal_order(const MigrationProposal& a, const MigrationProposal& b) {
  if (a.raw_benefit != b.raw_benefit) return a.raw_benefit > b.raw_benefit;
  if (a.source != b.source) return a.source < b.source;
  return a.group < b.group;
}

bool disjoint_groups(const std::vector<ProcessId>& a, const std::vector<ProcessId>& b) {
  std::size_t i = 0, k = 0;
  while (i < a.size() && k < b.size()) {
    if (a[i] == b[k]) return false;
    if (a[i] < b[k]) ++i;
    else ++k;
  }
  return true;
}

Volume cross_load(const AppGraph& app, const std::vector<ProcessId>& a,
                  const std::vector<ProcessId>& b) {
  Volume total = 0;
  for (ProcessId i : a)
    for (const auto& [k, volume] : app.partners(i))
      if (std::binary_search(b.begin(), b.end(), k)) total += volume;
  return total;
}

// Capacity bookkeeping for the acceptance loop; null means unlimited.
struct SlotContext {
  const AppGraph* app = nullptr;
  const Topology* topo = nullptr;
  const Assignment* f = nullptr;
  const InertiaConfig* inertia = nullptr;
  const std::vector<int>* capacities = nullptr;
  std::vector<int>* projected = nullptr;
};

std::vector<MigrationProposal> accept_proposals(const AppGraph& app, const Topology& topo,
                                                std::vector<MigrationProposal> proposals,
                                                SchedulePolicy policy, const SlotContext& slots) {
  std::sort(proposals.begin(), proposals.end(), proposal_order);
  const bool tree = topo.mode() == TopologyMode::tree;
  std::vector<MigrationProposal> accepted;
  for (auto& candidate : proposals) {
    if (policy == SchedulePolicy::sequential && !accepted.empty()) break;
    bool deferred = false;
    for (const auto& ahead : accepted) {
      if (!disjoint_groups(ahead.group, candidate.group)) {
        deferred = true;
        break;
      }
      const bool mutual = ahead.source == candidate.dest && ahead.dest == candidate.source;
      if (tree && !mutual) continue;
      if (cross_load(app, ahead.group, candidate.group) > 0) {
        deferred = true;
        break;
      }
    }
    if (deferred) continue;
    MigrationProposal chosen = std::move(candidate);
    if (slots.capacities) {
      const int free = (*slots.capacities)[chosen.dest - 1] - (*slots.projected)[chosen.dest];
      auto pruned = prune_for_capacity(*slots.app, *slots.topo, *slots.f, chosen, free,
                                       *slots.inertia);
      if (!pruned) continue;
      chosen = std::move(*pruned);
      const int size = static_cast<int>(chosen.group.size());
      (*slots.projected)[chosen.dest] += size;
      (*slots.projected)[chosen.source] -= size;
    }
    accepted.push_back(std::move(chosen));
  }
  return accepted;
}

std::string policy_name(SchedulePolicy policy) {
  return policy == SchedulePolicy::sequential ? "sequential" : "concurrent";
}

std::string hash_hex(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

}  // namespace

NodeAgent NodeAgent::observe(const AppGraph& app, const Topology& topo, const Assignment& f,
                             NodeId s) {
  NodeAgent agent;
  agent.node_ = s;
  for (NodeId d : candidate_destinations(topo, s))
    agent.views_.push_back(build_direction_view(app, topo, f, s, d));
  if (!agent.views_.empty()) agent.interacting_ = !agent.views_.front().internal.empty();
  return agent;
}

std::vector<MigrationProposal> NodeAgent::propose(const InertiaConfig& inertia,
                                                  bool singles_only) const {
  const bool singles = singles_only || !interacting_;
  std::vector<MigrationProposal> out;
  for (const auto& view : views_)
    if (auto p = pick_from_view(view, inertia, singles)) out.push_back(std::move(*p));
  return out;
}

std::optional<MigrationProposal> NodeAgent::best_departure(const InertiaConfig& inertia,
                                                           bool singles_only) const {
  const bool singles = singles_only || !interacting_;
  auto scan = [&](bool inter) {
    std::optional<MigrationProposal> best;
    for (const auto& view : views_) {
      if (view.inter_cluster != inter) continue;
      auto p = pick_from_view(view, inertia, singles);
      if (p && (!best || p->raw_benefit > best->raw_benefit)) best = std::move(p);
    }
    return best;
  };
  if (auto inter = scan(true)) return inter;
  return scan(false);
}

std::vector<MigrationProposal> schedule_round(const AppGraph& app, const Topology& topo,
                                              std::vector<MigrationProposal> proposals,
                                              SchedulePolicy policy) {
  return accept_proposals(app, topo, std::move(proposals), policy, {});
}

TrafficAverager apply_traffic_transition(const TrafficAverager& averager,
                                         const std::vector<std::vector<TrafficEntry>>& schedule,
                                         std::size_t window) {
  if (window >= schedule.size()) return averager;
  return averager.updated(schedule[window]);
}

RunResult run(const Scenario& scenario, const RunParams& params) {
  if (params.max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
  const Topology topo = scenario.network();
  const InertiaConfig inertia(params.gamma.value_or(scenario.gamma));
  const Ratio alpha = params.alpha.value_or(scenario.alpha);

  const AppGraph base = scenario.app();
  TrafficAverager averager(alpha, base);
  AppGraph app = base;
  Assignment f = scenario.initial();

  RunResult out;
  out.exec = exec_cost(app);
  out.initial_comm = comm_cost(app, topo, f);
  out.cost_rows.push_back({0, out.exec, out.initial_comm, 0});

  const bool limited = !scenario.capacities.empty();
  std::vector<int> occupancy(topo.location_count() + 1, 0);
  for (NodeId h : f.hosts()) ++occupancy[h];

  Cost comm_now = out.initial_comm;
  std::size_t next_window = 0;
  int round = 0;
  while (round < params.max_rounds) {
    ++round;
    out.rounds = round;

    std::vector<MigrationProposal> departures;
    for (NodeId s = 1; s <= topo.location_count(); ++s) {
      const NodeAgent agent = NodeAgent::observe(app, topo, f, s);
      if (auto p = agent.best_departure(inertia, params.singles_only))
        departures.push_back(std::move(*p));
    }

    std::vector<int> projected = occupancy;
    SlotContext slots;
    if (limited) slots = {&app, &topo, &f, &inertia, &scenario.capacities, &projected};
    const auto applied =
        accept_proposals(app, topo, std::move(departures), params.policy, slots);

    if (applied.empty()) {
      out.cost_rows.push_back({round, out.exec, comm_now, 0});
      if (next_window < scenario.traffic_schedule.size()) {
        averager = apply_traffic_transition(averager, scenario.traffic_schedule, next_window);
        app = base.with_traffic(averager.rounded());
        f = Assignment(app, f.hosts());
        comm_now = comm_cost(app, topo, f);
        out.transitions.push_back({round, static_cast<int>(next_window) + 1, comm_now});
        ++next_window;
        continue;
      }
      out.converged = true;
      break;
    }

    Assignment next = f;
    Cost promised = 0;
    for (const auto& p : applied) {
      next = next.with_moved(p.group, p.dest);
      promised += p.raw_benefit;
    }
    const Cost comm_after = comm_cost(app, topo, next);
    if (comm_now - comm_after != promised)
      throw InternalError("round delta does not match the accepted benefits");

    for (const auto& p : applied)
      out.events.push_back(
          {round, p.group, p.source, p.dest, p.positive, p.negative, p.raw_benefit, comm_now,
           comm_after});
    out.migrations += static_cast<int>(applied.size());
    f = std::move(next);
    comm_now = comm_after;
    if (limited) {
      std::fill(occupancy.begin(), occupancy.end(), 0);
      for (NodeId h : f.hosts()) ++occupancy[h];
    }
    out.cost_rows.push_back({round, out.exec, comm_now, static_cast<int>(applied.size())});
  }

  out.final_comm = comm_now;
  out.final_hosts = f.hosts();
  return out;
}

std::string trace_jsonl(const Scenario& scenario, const RunParams& params,
                        const RunResult& result) {
  using nlohmann::json;
  std::string out;
  const Ratio gamma = params.gamma.value_or(scenario.gamma);
  const Ratio alpha = params.alpha.value_or(scenario.alpha);
  json header = {{"type", "header"},
                 {"scenario", hash_hex(scenario.content_hash())},
                 {"seed", params.seed},
                 {"policy", policy_name(params.policy)},
                 {"gamma", gamma.as_double()},
                 {"alpha", alpha.as_double()},
                 {"singles_only", params.singles_only},
                 {"max_rounds", params.max_rounds}};
  out += header.dump() + "\n";

  std::size_t e = 0, t = 0;
  while (e < result.events.size() || t < result.transitions.size()) {
    const bool take_event =
        e < result.events.size() &&
        (t >= result.transitions.size() || result.events[e].round < result.transitions[t].round);
    if (take_event) {
      const auto& ev = result.events[e++];
      json line = {{"type", "migration"}, {"round", ev.round},
                   {"group", ev.group},   {"source", ev.source},
                   {"dest", ev.dest},     {"positive", ev.positive},
                   {"negative", ev.negative}, {"benefit", ev.raw_benefit},
                   {"comm_before", ev.comm_before}, {"comm_after", ev.comm_after}};
      out += line.dump() + "\n";
    } else {
      const auto& tr = result.transitions[t++];
      json line = {{"type", "transition"}, {"round", tr.round}, {"window", tr.window},
                   {"comm", tr.comm}};
      out += line.dump() + "\n";
    }
  }

  json tail = {{"type", "result"},
               {"converged", result.converged},
               {"rounds", result.rounds},
               {"migrations", result.migrations},
               {"initial_comm", result.initial_comm},
               {"final_comm", result.final_comm},
               {"exec_cost", result.exec},
               {"assignment", result.final_hosts}};
  out += tail.dump() + "\n";
  return out;
}

std::string cost_csv(const RunResult& result) {
  std::string out = "round,exec,comm,total,migrations_applied\n";
  for (const auto& row : result.cost_rows) {
    out += std::to_string(row.round) + "," + std::to_string(row.exec) + "," +
           std::to_string(row.comm) + "," + std::to_string(row.exec + row.comm) + "," +
           std::to_string(row.migrations) + "\n";
  }
  return out;
}

std::string assignment_json(const RunResult& result) {
  nlohmann::json doc = {{"assignment", result.final_hosts},
                        {"converged", result.converged},
                        {"rounds", result.rounds},
                        {"migrations", result.migrations},
                        {"exec_cost", result.exec},
                        {"comm_cost", result.final_comm},
                        {"total_cost", result.exec + result.final_comm}};
  return doc.dump(2) + "\n";
}

}  // namespace dra
