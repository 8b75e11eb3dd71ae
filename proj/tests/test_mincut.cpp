#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "errors.hpp"
#include "mincut.hpp"
#include "scenario.hpp"

using namespace dra;

namespace {

struct EdgeSpec {
  int u, v;
  Cost cap;
};

// Every source/sink bipartition, scored by hand.
Cost brute_force_cut(int n, int source, int sink, const std::vector<EdgeSpec>& edges,
                     std::vector<std::vector<int>>* minimizers = nullptr) {
  Cost best = -1;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (mask & (1 << source)) continue;
    if (!(mask & (1 << sink))) continue;
    Cost crossing = 0;
    for (const auto& e : edges) {
      const bool u_sink = mask & (1 << e.u);
      const bool v_sink = mask & (1 << e.v);
      if (u_sink != v_sink) crossing += e.cap;
    }
    if (best < 0 || crossing < best) {
      best = crossing;
      if (minimizers) minimizers->clear();
    }
    if (crossing == best && minimizers) {
      std::vector<int> side;
      for (int v = 0; v < n; ++v)
        if (mask & (1 << v)) side.push_back(v);
      minimizers->push_back(side);
    }
  }
  return best;
}

FlowNetwork build(int n, int source, int sink, const std::vector<EdgeSpec>& edges) {
  FlowNetwork net(n, source, sink);
  for (const auto& e : edges) net.add_edge(e.u, e.v, e.cap);
  return net;
}

}  // namespace

TEST_CASE("two-edge chain keeps the cheap edge in the cut") {
  // s - a capacity 3, a - t capacity 7: cut 3, both a and t on the sink side.
  const FlowNetwork net = build(3, 0, 2, {{0, 1, 3}, {1, 2, 7}});
  const MinCutResult cut = net.min_cut();
  CHECK(cut.value == 3);
  CHECK(cut.sink_side == std::vector<int>{1, 2});
}

TEST_CASE("parallel edges accumulate") {
  const FlowNetwork net = build(2, 0, 1, {{0, 1, 2}, {0, 1, 5}});
  CHECK(net.min_cut().value == 7);
}

TEST_CASE("no path means an empty cut") {
  FlowNetwork net(4, 0, 3);
  net.add_edge(1, 2, 9);  // island between the terminals
  const MinCutResult cut = net.min_cut();
  CHECK(cut.value == 0);
  // Vertices detached from both terminals stay with the source.
  CHECK(cut.sink_side == std::vector<int>{3});
}

TEST_CASE("canonical side is the smallest minimizer") {
  // s - a - t with equal capacities: {a,t} and {t} both cut 4; the minimal
  // sink side keeps only t.
  const FlowNetwork net = build(3, 0, 2, {{0, 1, 4}, {1, 2, 4}});
  const MinCutResult cut = net.min_cut();
  CHECK(cut.value == 4);
  CHECK(cut.sink_side == std::vector<int>{2});
}

TEST_CASE("zero capacity edges carry nothing") {
  const FlowNetwork net = build(3, 0, 2, {{0, 1, 0}, {1, 2, 5}});
  const MinCutResult cut = net.min_cut();
  CHECK(cut.value == 0);
  CHECK(cut.sink_side == std::vector<int>{1, 2});
}

TEST_CASE("construction rejects bad shapes") {
  CHECK_THROWS_AS(FlowNetwork(1, 0, 0), DomainError);
  CHECK_THROWS_AS(FlowNetwork(2, 0, 2), DomainError);
  FlowNetwork net(3, 0, 2);
  CHECK_THROWS_AS(net.add_edge(0, 3, 1), DomainError);
  CHECK_THROWS_AS(net.add_edge(1, 1, 1), DomainError);
  CHECK_THROWS_AS(net.add_edge(0, 1, -2), DomainError);
}

TEST_CASE("random networks match exhaustive bipartition scoring") {
  Rng rng(2026);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.uniform(2, 8);
    const int source = 0;
    const int sink = n - 1;
    std::vector<EdgeSpec> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.chance(3, 5)) edges.push_back({u, v, rng.uniform(0, 12)});
      }
    }
    std::vector<std::vector<int>> minimizers;
    const Cost expected = brute_force_cut(n, source, sink, edges, &minimizers);
    const MinCutResult cut = build(n, source, sink, edges).min_cut();
    CHECK(cut.value == expected);

    // The reported side is itself a minimizer...
    CHECK(std::find(minimizers.begin(), minimizers.end(), cut.sink_side) != minimizers.end());
    // ...and is contained in every other minimizing sink side.
    for (const auto& other : minimizers) {
      CHECK(std::includes(other.begin(), other.end(), cut.sink_side.begin(),
                          cut.sink_side.end()));
    }
  }
}
