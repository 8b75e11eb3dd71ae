#include "app_model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace dra {

namespace {

std::string pair_name(ProcessId i, ProcessId k) {
  return "(" + std::to_string(i) + ", " + std::to_string(k) + ")";
}

}  // namespace

AppGraph::AppGraph(int real_count, int location_count, std::vector<Cost> exec_costs,
                   const std::vector<TrafficEntry>& traffic, std::vector<NodeId> virtual_pins)
    : real_(real_count), locations_(location_count), exec_(std::move(exec_costs)) {
  std::vector<std::string> issues;
  if (real_ < 0) issues.push_back("process count must be nonnegative");
  if (locations_ < 1) issues.push_back("location count must be at least 1");
  if (static_cast<int>(exec_.size()) != std::max(real_, 0)) {
    issues.push_back("exec_costs must list exactly one cost per real process");
  }
  for (size_t i = 0; i < exec_.size(); ++i) {
    if (exec_[i] <= 0) {
      issues.push_back("process " + std::to_string(i + 1) + ": execution cost must be positive");
    }
  }

  if (virtual_pins.empty() && locations_ >= 1) {
    virtual_pins.resize(locations_);
    std::iota(virtual_pins.begin(), virtual_pins.end(), 1);
  }
  pin_ = std::move(virtual_pins);
  if (static_cast<int>(pin_.size()) != locations_) {
    issues.push_back("pins must map every virtual process to a location");
  } else {
    std::vector<char> used(locations_ + 1, 0);
    for (int x = 0; x < locations_; ++x) {
      const NodeId loc = pin_[x];
      if (loc < 1 || loc > locations_) {
        issues.push_back("pin of virtual process " + std::to_string(real_ + x + 1) +
                         ": unknown location " + std::to_string(loc));
      } else if (used[loc]++) {
        issues.push_back("location " + std::to_string(loc) + " is pinned more than once");
      }
    }
  }

  const int total = real_ + locations_;
  for (const auto& e : traffic) {
    if (e.from < 1 || e.from > total || e.to < 1 || e.to > total) {
      issues.push_back("traffic " + pair_name(e.from, e.to) + ": unknown process id");
      continue;
    }
    if (e.from == e.to) {
      issues.push_back("traffic " + pair_name(e.from, e.to) + ": a process never talks to itself");
      continue;
    }
    if (e.from > real_ && e.to > real_) {
      issues.push_back("traffic " + pair_name(e.from, e.to) +
                       ": virtual processes never exchange traffic");
      continue;
    }
    if (e.bytes < 0) {
      issues.push_back("traffic " + pair_name(e.from, e.to) + ": volume must be nonnegative");
      continue;
    }
    if (e.bytes > kMaxVolume) {
      issues.push_back("traffic " + pair_name(e.from, e.to) + ": volume exceeds " +
                       std::to_string(kMaxVolume));
      continue;
    }
    if (e.bytes == 0) continue;
    if (!c_.emplace(std::make_pair(e.from, e.to), e.bytes).second) {
      issues.push_back("traffic " + pair_name(e.from, e.to) + ": duplicate entry");
    }
  }
  if (!issues.empty()) throw ValidationError(issues);

  virtual_.assign(locations_ + 1, 0);
  for (int x = 0; x < locations_; ++x) virtual_[pin_[x]] = real_ + x + 1;

  exec_total_ = std::accumulate(exec_.begin(), exec_.end(), Cost{0});

  partners_.assign(total + 1, {});
  total_external_.assign(total + 1, 0);
  std::map<std::pair<ProcessId, ProcessId>, Volume> loads;
  for (const auto& [key, bytes] : c_) {
    auto [i, k] = key;
    loads[std::minmax(i, k)] += bytes;
  }
  for (const auto& [key, volume] : loads) {
    auto [i, k] = key;
    partners_[i].emplace_back(k, volume);
    partners_[k].emplace_back(i, volume);
    total_external_[i] += volume;
    total_external_[k] += volume;
  }
  for (auto& list : partners_) {
    std::sort(list.begin(), list.end());
  }
}

void AppGraph::check_id(ProcessId i, const char* what) const {
  if (i < 1 || i > process_count()) {
    throw DomainError(std::string(what) + ": unknown process " + std::to_string(i));
  }
}

NodeId AppGraph::pin_of(ProcessId virtual_id) const {
  check_id(virtual_id, "pin_of");
  if (!is_virtual(virtual_id)) {
    throw DomainError("pin_of: process " + std::to_string(virtual_id) + " is not virtual");
  }
  return pin_[virtual_id - real_ - 1];
}

ProcessId AppGraph::virtual_at(NodeId location) const {
  if (location < 1 || location > locations_) {
    throw DomainError("virtual_at: unknown location " + std::to_string(location));
  }
  return virtual_[location];
}

Cost AppGraph::exec_cost_of(ProcessId i) const {
  check_id(i, "exec_cost_of");
  return is_real(i) ? exec_[i - 1] : 0;
}

Volume AppGraph::traffic_between(ProcessId i, ProcessId k) const {
  check_id(i, "traffic_between");
  check_id(k, "traffic_between");
  auto it = c_.find({i, k});
  return it == c_.end() ? 0 : it->second;
}

Volume AppGraph::load(ProcessId i, ProcessId k) const {
  check_id(i, "load");
  check_id(k, "load");
  if (i == k) throw DomainError("load: process paired with itself");
  if (is_virtual(i) && is_virtual(k)) {
    throw DomainError("load: " + pair_name(i, k) + " pairs two virtual processes");
  }
  Volume volume = 0;
  if (auto it = c_.find({i, k}); it != c_.end()) volume += it->second;
  if (auto it = c_.find({k, i}); it != c_.end()) volume += it->second;
  return volume;
}

Volume AppGraph::total_external_load(ProcessId i) const {
  check_id(i, "total_external_load");
  return total_external_[i];
}

const std::vector<std::pair<ProcessId, Volume>>& AppGraph::partners(ProcessId i) const {
  check_id(i, "partners");
  return partners_[i];
}

std::vector<TrafficEntry> AppGraph::entries() const {
  std::vector<TrafficEntry> out;
  out.reserve(c_.size());
  for (const auto& [key, bytes] : c_) out.push_back({key.first, key.second, bytes});
  return out;
}

AppGraph AppGraph::with_traffic(const std::vector<TrafficEntry>& traffic) const {
  return AppGraph(real_, locations_, exec_, traffic, pin_);
}

TrafficAverager::TrafficAverager(Ratio alpha, const AppGraph& initial)
    : alpha_(alpha), real_(initial.real_count()), locations_(initial.location_count()) {
  if (alpha_.den <= 0 || alpha_.num <= 0 || alpha_.num >= alpha_.den) {
    throw ConfigError("smoothing constant must lie strictly between 0 and 1");
  }
  for (const auto& e : initial.entries()) {
    scaled_[{e.from, e.to}] = e.bytes * kScale;
  }
}

void TrafficAverager::check_entry(const TrafficEntry& e) const {
  const int total = real_ + locations_;
  if (e.from < 1 || e.from > total || e.to < 1 || e.to > total || e.from == e.to) {
    throw DomainError("measured traffic " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                      " does not fit the application shape");
  }
  if (e.from > real_ && e.to > real_) {
    throw DomainError("measured traffic pairs two virtual processes");
  }
  if (e.bytes < 0 || e.bytes > kMaxVolume) {
    throw DomainError("measured traffic volume out of range");
  }
}

TrafficAverager TrafficAverager::updated(const std::vector<TrafficEntry>& measured) const {
  std::map<std::pair<ProcessId, ProcessId>, Volume> window;
  for (const auto& e : measured) {
    check_entry(e);
    window[{e.from, e.to}] += e.bytes;
  }

  TrafficAverager next = *this;
  next.scaled_.clear();
  // Union of previously smoothed pairs and freshly measured ones; absent
  // measurements count as zero traffic for the window.
  auto fold = [&](const std::pair<ProcessId, ProcessId>& key, std::int64_t previous, Volume bytes) {
    const auto a = static_cast<__int128>(alpha_.num);
    const auto b = static_cast<__int128>(alpha_.den - alpha_.num);
    const __int128 numerator = a * previous + b * bytes * kScale;
    const auto value =
        static_cast<std::int64_t>((numerator + alpha_.den / 2) / alpha_.den);
    if (value != 0) next.scaled_[key] = value;
  };
  auto old_it = scaled_.begin();
  auto new_it = window.begin();
  while (old_it != scaled_.end() || new_it != window.end()) {
    if (new_it == window.end() || (old_it != scaled_.end() && old_it->first < new_it->first)) {
      fold(old_it->first, old_it->second, 0);
      ++old_it;
    } else if (old_it == scaled_.end() || new_it->first < old_it->first) {
      fold(new_it->first, 0, new_it->second);
      ++new_it;
    } else {
      fold(old_it->first, old_it->second, new_it->second);
      ++old_it;
      ++new_it;
    }
  }
  return next;
}

std::vector<TrafficEntry> TrafficAverager::rounded() const {
  std::vector<TrafficEntry> out;
  for (const auto& [key, value] : scaled_) {
    const Volume bytes = (value + kScale / 2) / kScale;
    if (bytes > 0) out.push_back({key.first, key.second, bytes});
  }
  return out;
}

std::int64_t TrafficAverager::scaled(ProcessId i, ProcessId k) const {
  auto it = scaled_.find({i, k});
  return it == scaled_.end() ? 0 : it->second;
}

}  // namespace dra
