#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "engine.hpp"
#include "oracle.hpp"
#include "scenario.hpp"

namespace dra {

/// A batch of generated instances, each checked against the strongest
/// available reference: on trees the enumerated optimum must match the
/// reached cost exactly; between clusters the run must converge and must not
/// end above its starting cost (the landing-server estimates make no
/// optimality promise there).
struct CompareParams {
  TopologyMode mode = TopologyMode::tree;
  std::uint64_t first_seed = 1;
  int instances = 20;
  int min_nodes = 2;
  int max_nodes = 5;
  int servers_per_cluster = 2;  // hierarchical instances only
  int min_processes = 1;
  int max_processes = 7;
  int max_volume = 50;
  int traffic_percent = 60;
  SchedulePolicy policy = SchedulePolicy::concurrent;
  Ratio gamma{1, 1};
  int max_rounds = 10'000;
  OracleBudget budget{};
};

struct CompareMismatch {
  std::uint64_t seed = 0;
  Cost dra_cost = 0;
  /// Tree: the enumerated optimum. Hierarchical: the starting cost the run
  /// was required not to exceed.
  Cost oracle_cost = 0;
};

struct CompareOutcome {
  int instances = 0;
  int matches = 0;
  std::vector<CompareMismatch> mismatches;
  int skipped = 0;  // enumeration over budget; counted, never failed
};

CompareOutcome compare_against_reference(const CompareParams& params);

std::string compare_report_json(const CompareOutcome& outcome);

}  // namespace dra
