#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "app_model.hpp"
#include "cost.hpp"
#include "topology.hpp"
#include "types.hpp"

namespace dra {

/// Deterministic random source. Wraps mt19937_64 but derives values itself,
/// because the standard distributions are not pinned across platforms and
/// generated scenarios must be byte-identical for a given seed everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi], both inclusive.
  int uniform(int lo, int hi);

  /// True with probability num/den.
  bool chance(int num, int den);

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (int i = static_cast<int>(values.size()) - 1; i > 0; --i) {
      std::swap(values[static_cast<size_t>(i)], values[static_cast<size_t>(uniform(0, i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Declarative network description, the form scenarios carry on disk.
struct TopologySpec {
  TopologyMode mode = TopologyMode::tree;
  /// Tree mode: node count. Hierarchical mode: cluster count.
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
  int servers_per_cluster = 1;

  int location_count() const;
  Topology build() const;

  friend bool operator==(const TopologySpec&, const TopologySpec&) = default;
};

/// A complete problem instance: network, application, starting placement and
/// tuning knobs, plus the optional measured-traffic timeline.
struct Scenario {
  TopologySpec topology;
  int process_count = 0;
  std::vector<Cost> exec_costs;
  std::vector<TrafficEntry> traffic;
  std::vector<NodeId> pins;  // empty = identity pinning
  std::vector<NodeId> initial_hosts;
  Ratio alpha{1, 2};
  Ratio gamma{1, 1};
  /// Measured traffic per later monitoring window, folded in one window per
  /// transition while the run is in progress.
  std::vector<std::vector<TrafficEntry>> traffic_schedule;
  /// Per-location process slots; empty = unlimited.
  std::vector<int> capacities;

  Topology network() const { return topology.build(); }
  AppGraph app() const;
  Assignment initial() const { return Assignment(app(), initial_hosts); }

  /// Cross-field checks beyond what the parts validate on their own.
  void validate() const;

  /// Canonical form: sorted keys, two-space indent, trailing newline.
  std::string to_json_text() const;
  std::uint64_t content_hash() const;  // FNV-1a 64 over the canonical text

  static Scenario from_json_text(const std::string& text);
  static Scenario from_file(const std::string& path);
};

struct GenParams {
  std::uint64_t seed = 1;
  TopologyMode mode = TopologyMode::tree;
  int node_count = 4;  // tree nodes, or clusters in hierarchical mode
  int servers_per_cluster = 2;
  int process_count = 6;
  Volume max_volume = 50;
  /// Chance (percent) that a process pair exchanges traffic; virtual partners
  /// are drawn at half this rate.
  int traffic_percent = 60;
  int schedule_windows = 0;
  Ratio alpha{1, 2};
  Ratio gamma{1, 1};
};

/// Seed-deterministic instance: random tree/cluster topology, sparse traffic,
/// shuffled pins, uniform starting placement.
Scenario generate_scenario(const GenParams& params);

}  // namespace dra
