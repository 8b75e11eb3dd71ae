#pragma once

#include <map>
#include <utility>
#include <vector>

#include "types.hpp"

namespace dra {

struct TrafficEntry {
  ProcessId from = 0;
  ProcessId to = 0;
  Volume bytes = 0;
  friend bool operator==(const TrafficEntry&, const TrafficEntry&) = default;
};

/// The application: P real processes, one virtual process per location, a
/// sparse directed traffic matrix and per-process execution costs.
///
/// Virtual processes model the traffic a location itself sources or sinks;
/// they never migrate and never talk to each other. load(i, k) is the
/// undirected volume c_ik + c_ki the pair exchanges per window.
class AppGraph {
 public:
  /// `virtual_pins` maps virtual ordinal x (process P+x) to its location;
  /// empty means the identity pinning. Throws ValidationError listing every
  /// problem found.
  AppGraph(int real_count, int location_count, std::vector<Cost> exec_costs,
           const std::vector<TrafficEntry>& traffic, std::vector<NodeId> virtual_pins = {});

  int real_count() const { return real_; }
  int location_count() const { return locations_; }
  int process_count() const { return real_ + locations_; }

  bool is_real(ProcessId i) const { return i >= 1 && i <= real_; }
  bool is_virtual(ProcessId i) const { return i > real_ && i <= process_count(); }

  NodeId pin_of(ProcessId virtual_id) const;
  ProcessId virtual_at(NodeId location) const;

  Cost exec_cost_of(ProcessId i) const;
  Cost exec_total() const { return exec_total_; }

  /// Directed volume c_ik; dense view over the sparse entries.
  Volume traffic_between(ProcessId i, ProcessId k) const;

  /// Undirected volume the pair exchanges. Rejects i == k, unknown ids and
  /// virtual-virtual pairs.
  Volume load(ProcessId i, ProcessId k) const;

  /// Sum of load(i, k) over every other process k.
  Volume total_external_load(ProcessId i) const;

  /// Nonzero-load partners of i, ascending by partner id.
  const std::vector<std::pair<ProcessId, Volume>>& partners(ProcessId i) const;

  /// Canonical sparse entries, ascending by (from, to).
  std::vector<TrafficEntry> entries() const;

  /// Same processes and pins, different traffic.
  AppGraph with_traffic(const std::vector<TrafficEntry>& traffic) const;

 private:
  void check_id(ProcessId i, const char* what) const;

  int real_ = 0;
  int locations_ = 0;
  std::vector<Cost> exec_;
  Cost exec_total_ = 0;
  std::vector<NodeId> pin_;          // virtual ordinal -> location
  std::vector<ProcessId> virtual_;   // location -> virtual process id
  std::map<std::pair<ProcessId, ProcessId>, Volume> c_;
  std::vector<std::vector<std::pair<ProcessId, Volume>>> partners_;
  std::vector<Volume> total_external_;
};

/// Exponentially smoothed traffic: volume[t] = a*volume[t-1] + (1-a)*c[t].
///
/// State is fixed point (kScale units per byte) so repeated folds stay exact
/// integers; each fold rounds half up once. rounded() yields whole bytes,
/// again half up, which is the only place smoothed volumes meet the decision
/// arithmetic.
class TrafficAverager {
 public:
  static constexpr std::int64_t kScale = std::int64_t{1} << 20;

  TrafficAverager(Ratio alpha, const AppGraph& initial);

  Ratio alpha() const { return alpha_; }

  /// One monitoring window worth of measured traffic folded in.
  TrafficAverager updated(const std::vector<TrafficEntry>& measured) const;

  /// Smoothed matrix rounded to whole bytes.
  std::vector<TrafficEntry> rounded() const;

  /// Scaled smoothed volume for one ordered pair (kScale units per byte).
  std::int64_t scaled(ProcessId i, ProcessId k) const;

 private:
  void check_entry(const TrafficEntry& e) const;

  Ratio alpha_;
  int real_ = 0;
  int locations_ = 0;
  std::map<std::pair<ProcessId, ProcessId>, std::int64_t> scaled_;
};

}  // namespace dra
