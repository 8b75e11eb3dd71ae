#include "compare.hpp"

#include "json.hpp"

#include "errors.hpp"

namespace dra {

CompareOutcome compare_against_reference(const CompareParams& params) {
  if (params.instances < 1) throw ConfigError("compare needs at least one instance");
  if (params.min_nodes < 1 || params.min_nodes > params.max_nodes)
    throw ConfigError("compare node range is empty");
  if (params.min_processes < 1 || params.min_processes > params.max_processes)
    throw ConfigError("compare process range is empty");

  CompareOutcome outcome;
  for (int i = 0; i < params.instances; ++i) {
    const std::uint64_t seed = params.first_seed + static_cast<std::uint64_t>(i);
    Rng pick(seed);
    GenParams gp;
    gp.mode = params.mode;
    gp.node_count = pick.uniform(params.min_nodes, params.max_nodes);
    gp.servers_per_cluster = params.servers_per_cluster;
    gp.process_count = pick.uniform(params.min_processes, params.max_processes);
    gp.max_volume = params.max_volume;
    gp.traffic_percent = params.traffic_percent;
    gp.gamma = params.gamma;
    gp.seed = pick.next();
    const Scenario scenario = generate_scenario(gp);

    RunParams rp;
    rp.policy = params.policy;
    rp.gamma = params.gamma;
    rp.max_rounds = params.max_rounds;
    rp.seed = seed;
    const RunResult result = run(scenario, rp);
    ++outcome.instances;

    if (params.mode == TopologyMode::tree) {
      const AppGraph app = scenario.app();
      const IndependentMetric metric(scenario.topology, app);
      OptimalPlacement best;
      try {
        best = optimal_assignment(metric, params.budget);
      } catch (const BudgetExceeded&) {
        ++outcome.skipped;
        continue;
      }
      if (result.converged && result.final_comm == best.comm) ++outcome.matches;
      else outcome.mismatches.push_back({seed, result.final_comm, best.comm});
    } else {
      if (result.converged && result.final_comm <= result.initial_comm) ++outcome.matches;
      else outcome.mismatches.push_back({seed, result.final_comm, result.initial_comm});
    }
  }
  return outcome;
}

std::string compare_report_json(const CompareOutcome& outcome) {
  nlohmann::json mismatches = nlohmann::json::array();
  for (const auto& m : outcome.mismatches)
    mismatches.push_back(
        {{"seed", m.seed}, {"dra_cost", m.dra_cost}, {"oracle_cost", m.oracle_cost}});
  nlohmann::json doc = {{"instances", outcome.instances},
                        {"matches", outcome.matches},
                        {"mismatches", mismatches},
                        {"skipped", outcome.skipped}};
  return doc.dump(2) + "\n";
}

}  // namespace dra
