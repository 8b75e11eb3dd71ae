#include "scenario.hpp"

#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

#include "errors.hpp"

namespace dra {

using nlohmann::json;

int Rng::uniform(int lo, int hi) {
  if (lo > hi) throw DomainError("rng: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  return lo + static_cast<int>(next() % span);
}

bool Rng::chance(int num, int den) {
  if (den <= 0 || num < 0) throw DomainError("rng: bad probability");
  return next() % static_cast<std::uint64_t>(den) < static_cast<std::uint64_t>(num);
}

int TopologySpec::location_count() const {
  return mode == TopologyMode::tree ? node_count : node_count * servers_per_cluster;
}

Topology TopologySpec::build() const {
  if (mode == TopologyMode::tree) return Topology::tree(node_count, edges);
  return Topology::hierarchical(node_count, edges, servers_per_cluster);
}

AppGraph Scenario::app() const {
  return AppGraph(process_count, topology.location_count(), exec_costs, traffic, pins);
}

void Scenario::validate() const {
  std::vector<std::string> issues;
  auto absorb = [&issues](const ValidationError& e) {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  };

  try {
    (void)network();
  } catch (const ValidationError& e) {
    absorb(e);
  }

  std::optional<AppGraph> graph;
  try {
    graph.emplace(app());
  } catch (const ValidationError& e) {
    absorb(e);
  }

  std::optional<Assignment> placement;
  if (graph) {
    try {
      placement.emplace(*graph, initial_hosts);
    } catch (const ValidationError& e) {
      absorb(e);
    }
    for (size_t w = 0; w < traffic_schedule.size(); ++w) {
      try {
        (void)graph->with_traffic(traffic_schedule[w]);
      } catch (const ValidationError& e) {
        for (const auto& issue : e.issues()) {
          issues.push_back("traffic window " + std::to_string(w + 1) + ": " + issue);
        }
      }
    }
  }

  if (!capacities.empty()) {
    if (static_cast<int>(capacities.size()) != topology.location_count()) {
      issues.push_back("capacities must list one slot count per location");
    } else {
      for (size_t loc = 0; loc < capacities.size(); ++loc) {
        if (capacities[loc] < 0) {
          issues.push_back("capacity of location " + std::to_string(loc + 1) +
                           " must not be negative");
        }
      }
      if (placement) {
        std::vector<int> occupied(capacities.size() + 1, 0);
        for (NodeId host : placement->hosts()) ++occupied[static_cast<size_t>(host)];
        for (size_t loc = 1; loc <= capacities.size(); ++loc) {
          if (occupied[loc] > capacities[loc - 1]) {
            issues.push_back("location " + std::to_string(loc) + " starts with " +
                             std::to_string(occupied[loc]) + " processes but has " +
                             std::to_string(capacities[loc - 1]) + " slots");
          }
        }
      }
    }
  }

  if (alpha.den <= 0 || alpha.num <= 0 || alpha.num >= alpha.den) {
    issues.push_back("alpha must lie strictly between 0 and 1");
  }
  if (gamma.den <= 0 || gamma.num < gamma.den) {
    issues.push_back("gamma must be at least 1");
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));
}

namespace {

json traffic_to_json(const std::vector<TrafficEntry>& traffic) {
  json out = json::array();
  for (const auto& e : traffic) {
    out.push_back({{"from", e.from}, {"to", e.to}, {"bytes", e.bytes}});
  }
  return out;
}

}  // namespace

std::string Scenario::to_json_text() const {
  json j;
  j["alpha"] = alpha.as_double();
  j["gamma"] = gamma.as_double();
  j["initial_assignment"] = initial_hosts;
  if (!pins.empty()) j["pins"] = pins;
  j["processes"] = {{"count", process_count}, {"exec_costs", exec_costs}};

  json topo;
  json edge_list = json::array();
  for (const auto& [a, b] : topology.edges) edge_list.push_back({a, b});
  if (topology.mode == TopologyMode::tree) {
    topo = {{"mode", "tree"}, {"nodes", topology.node_count}, {"edges", edge_list}};
  } else {
    topo = {{"mode", "hierarchical"},
            {"clusters", topology.node_count},
            {"edges", edge_list},
            {"servers_per_cluster", topology.servers_per_cluster}};
  }
  j["topology"] = topo;
  j["traffic"] = traffic_to_json(traffic);
  if (!traffic_schedule.empty()) {
    json windows = json::array();
    for (const auto& window : traffic_schedule) windows.push_back(traffic_to_json(window));
    j["traffic_schedule"] = windows;
  }
  if (!capacities.empty()) j["capacities"] = capacities;
  return j.dump(2) + "\n";
}

std::uint64_t Scenario::content_hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : to_json_text()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

/// Collects every shape problem in a parsed scenario document instead of
/// bailing at the first.
class Reader {
 public:
  std::vector<std::string> issues;

  bool is_int(const json& j) const { return j.is_number_integer(); }

  std::int64_t take_int(const json& parent, const char* key, const std::string& where) {
    if (!parent.contains(key)) {
      issues.push_back(where + "." + key + " is missing");
      return 0;
    }
    const json& v = parent.at(key);
    if (!is_int(v)) {
      issues.push_back(where + "." + key + " must be an integer");
      return 0;
    }
    return v.get<std::int64_t>();
  }

  std::vector<std::int64_t> take_int_array(const json& v, const std::string& where) {
    std::vector<std::int64_t> out;
    if (!v.is_array()) {
      issues.push_back(where + " must be an array of integers");
      return out;
    }
    for (size_t i = 0; i < v.size(); ++i) {
      if (!is_int(v[i])) {
        issues.push_back(where + "[" + std::to_string(i) + "] must be an integer");
        return {};
      }
      out.push_back(v[i].get<std::int64_t>());
    }
    return out;
  }

  Ratio take_ratio(const json& parent, const char* key, Ratio fallback) {
    if (!parent.contains(key)) return fallback;
    const json& v = parent.at(key);
    if (!v.is_number()) {
      issues.push_back(std::string(key) + " must be a number");
      return fallback;
    }
    try {
      return Ratio::from_decimal(v.get<double>());
    } catch (const ConfigError& e) {
      issues.push_back(std::string(key) + ": " + e.what());
      return fallback;
    }
  }

  std::vector<TrafficEntry> take_traffic(const json& v, const std::string& where) {
    std::vector<TrafficEntry> out;
    if (!v.is_array()) {
      issues.push_back(where + " must be an array");
      return out;
    }
    for (size_t i = 0; i < v.size(); ++i) {
      const std::string at = where + "[" + std::to_string(i) + "]";
      if (!v[i].is_object()) {
        issues.push_back(at + " must be an object");
        continue;
      }
      TrafficEntry e;
      e.from = static_cast<ProcessId>(take_int(v[i], "from", at));
      e.to = static_cast<ProcessId>(take_int(v[i], "to", at));
      e.bytes = take_int(v[i], "bytes", at);
      out.push_back(e);
    }
    return out;
  }

  void reject_unknown(const json& j, const std::set<std::string>& known,
                      const std::string& where) {
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (!known.count(key)) issues.push_back(where + ": unknown field \"" + key + "\"");
    }
  }
};

std::vector<NodeId> to_node_ids(const std::vector<std::int64_t>& raw) {
  std::vector<NodeId> out;
  out.reserve(raw.size());
  for (std::int64_t v : raw) out.push_back(static_cast<NodeId>(v));
  return out;
}

}  // namespace

Scenario Scenario::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scenario: top level must be a JSON object");

  Reader r;
  r.reject_unknown(j,
                   {"alpha", "capacities", "gamma", "initial_assignment", "pins", "processes",
                    "topology", "traffic", "traffic_schedule"},
                   "scenario");
  Scenario sc;

  if (!j.contains("topology") || !j["topology"].is_object()) {
    r.issues.push_back("topology must be an object");
  } else {
    const json& t = j["topology"];
    r.reject_unknown(t, {"mode", "nodes", "clusters", "edges", "servers_per_cluster"},
                     "topology");
    const std::string mode = t.contains("mode") && t["mode"].is_string()
                                 ? t["mode"].get<std::string>()
                                 : (r.issues.push_back("topology.mode must be a string"), "tree");
    if (mode == "tree") {
      sc.topology.mode = TopologyMode::tree;
      sc.topology.node_count = static_cast<int>(r.take_int(t, "nodes", "topology"));
    } else if (mode == "hierarchical") {
      sc.topology.mode = TopologyMode::hierarchical;
      sc.topology.node_count = static_cast<int>(r.take_int(t, "clusters", "topology"));
      sc.topology.servers_per_cluster =
          static_cast<int>(r.take_int(t, "servers_per_cluster", "topology"));
    } else {
      r.issues.push_back("topology.mode must be \"tree\" or \"hierarchical\"");
    }
    if (!t.contains("edges") || !t["edges"].is_array()) {
      r.issues.push_back("topology.edges must be an array");
    } else {
      for (size_t i = 0; i < t["edges"].size(); ++i) {
        const json& e = t["edges"][i];
        if (!e.is_array() || e.size() != 2 || !r.is_int(e[0]) || !r.is_int(e[1])) {
          r.issues.push_back("topology.edges[" + std::to_string(i) +
                             "] must be a pair of integers");
          continue;
        }
        sc.topology.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
    }
  }

  if (!j.contains("processes") || !j["processes"].is_object()) {
    r.issues.push_back("processes must be an object");
  } else {
    const json& p = j["processes"];
    r.reject_unknown(p, {"count", "exec_costs"}, "processes");
    sc.process_count = static_cast<int>(r.take_int(p, "count", "processes"));
    if (p.contains("exec_costs")) {
      for (std::int64_t v : r.take_int_array(p["exec_costs"], "processes.exec_costs")) {
        sc.exec_costs.push_back(v);
      }
    } else {
      r.issues.push_back("processes.exec_costs is missing");
    }
  }

  if (j.contains("traffic")) {
    sc.traffic = r.take_traffic(j["traffic"], "traffic");
  } else {
    r.issues.push_back("traffic must be an array");
  }

  if (j.contains("pins")) sc.pins = to_node_ids(r.take_int_array(j["pins"], "pins"));

  if (j.contains("initial_assignment")) {
    sc.initial_hosts = to_node_ids(r.take_int_array(j["initial_assignment"], "initial_assignment"));
  } else {
    r.issues.push_back("initial_assignment must be an array");
  }

  sc.alpha = r.take_ratio(j, "alpha", sc.alpha);
  sc.gamma = r.take_ratio(j, "gamma", sc.gamma);

  if (j.contains("traffic_schedule")) {
    if (!j["traffic_schedule"].is_array()) {
      r.issues.push_back("traffic_schedule must be an array of windows");
    } else {
      for (size_t w = 0; w < j["traffic_schedule"].size(); ++w) {
        sc.traffic_schedule.push_back(r.take_traffic(
            j["traffic_schedule"][w], "traffic_schedule[" + std::to_string(w) + "]"));
      }
    }
  }

  if (j.contains("capacities")) {
    for (std::int64_t v : r.take_int_array(j["capacities"], "capacities")) {
      sc.capacities.push_back(static_cast<int>(v));
    }
  }

  if (!r.issues.empty()) throw ValidationError(std::move(r.issues));
  sc.validate();
  return sc;
}

Scenario Scenario::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return from_json_text(buffer.str());
}

namespace {

/// Uniform random labeled tree on n nodes via its Pruefer sequence.
std::vector<std::pair<int, int>> random_tree(Rng& rng, int n) {
  std::vector<std::pair<int, int>> edges;
  if (n < 2) return edges;
  if (n == 2) {
    edges.emplace_back(1, 2);
    return edges;
  }
  std::vector<int> seq(static_cast<size_t>(n - 2));
  std::vector<int> degree(static_cast<size_t>(n + 1), 1);
  for (int& s : seq) {
    s = rng.uniform(1, n);
    ++degree[static_cast<size_t>(s)];
  }
  std::set<int> leaves;
  for (int v = 1; v <= n; ++v) {
    if (degree[static_cast<size_t>(v)] == 1) leaves.insert(v);
  }
  for (int s : seq) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, s);
    if (--degree[static_cast<size_t>(s)] == 1) leaves.insert(s);
  }
  const int a = *leaves.begin();
  const int b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return edges;
}

std::vector<TrafficEntry> random_traffic(Rng& rng, const GenParams& p, int locations) {
  std::vector<TrafficEntry> traffic;
  for (int i = 1; i <= p.process_count; ++i) {
    for (int k = i + 1; k <= p.process_count; ++k) {
      if (!rng.chance(p.traffic_percent, 100)) continue;
      const Volume bytes = rng.uniform(1, static_cast<int>(p.max_volume));
      traffic.push_back({i, k, bytes});
    }
  }
  for (int i = 1; i <= p.process_count; ++i) {
    for (int loc = 1; loc <= locations; ++loc) {
      if (!rng.chance(p.traffic_percent, 200)) continue;
      const Volume bytes = rng.uniform(1, static_cast<int>(p.max_volume));
      traffic.push_back({i, p.process_count + loc, bytes});
    }
  }
  return traffic;
}

}  // namespace

Scenario generate_scenario(const GenParams& params) {
  if (params.process_count < 1) throw ConfigError("generator: need at least one process");
  if (params.max_volume < 1 || params.max_volume > kMaxVolume) {
    throw ConfigError("generator: max_volume out of range");
  }
  if (params.traffic_percent < 0 || params.traffic_percent > 100) {
    throw ConfigError("generator: traffic_percent must be 0..100");
  }
  const bool tree = params.mode == TopologyMode::tree;
  if (tree && params.node_count < 2) throw ConfigError("generator: need at least two nodes");
  if (!tree && (params.node_count < 1 || params.servers_per_cluster < 1 ||
                params.node_count * params.servers_per_cluster < 2)) {
    throw ConfigError("generator: need at least two servers");
  }

  Rng rng(params.seed);
  Scenario sc;
  sc.topology.mode = params.mode;
  sc.topology.node_count = params.node_count;
  sc.topology.edges = random_tree(rng, params.node_count);
  sc.topology.servers_per_cluster = tree ? 1 : params.servers_per_cluster;
  const int locations = sc.topology.location_count();

  sc.process_count = params.process_count;
  for (int i = 0; i < params.process_count; ++i) sc.exec_costs.push_back(rng.uniform(1, 5));
  sc.traffic = random_traffic(rng, params, locations);

  sc.pins.resize(static_cast<size_t>(locations));
  std::iota(sc.pins.begin(), sc.pins.end(), 1);
  rng.shuffle(sc.pins);

  for (int i = 0; i < params.process_count; ++i) {
    sc.initial_hosts.push_back(rng.uniform(1, locations));
  }

  sc.alpha = params.alpha;
  sc.gamma = params.gamma;
  for (int w = 0; w < params.schedule_windows; ++w) {
    sc.traffic_schedule.push_back(random_traffic(rng, params, locations));
  }

  sc.validate();
  return sc;
}

}  // namespace dra
