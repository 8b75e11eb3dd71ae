#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "cost.hpp"
#include "errors.hpp"
#include "scenario.hpp"

using namespace dra;

TEST_CASE("hand-computed costs on a chain") {
  const Topology topo = Topology::tree(3, {{1, 2}, {2, 3}});
  // p1, p2 real; virtuals 3, 4, 5 at nodes 1, 2, 3.
  const AppGraph app(2, 3, {4, 6}, {{1, 2, 10}, {1, 3, 2}, {2, 5, 7}});
  const Assignment f(app, {1, 2});
  CHECK(exec_cost(app) == 10);
  // 10 * h(1,2) + 2 * h(1,1) + 7 * h(2,3) = 10 + 0 + 7.
  CHECK(comm_cost(app, topo, f) == 17);
  CHECK(comm_cost_unordered(app, topo, f) == 17);
  const CostBreakdown all = total_cost(app, topo, f);
  CHECK(all == CostBreakdown{10, 17, 27});

  const Assignment moved = f.with_moved({1}, 2);
  // 10 * 0 + 2 * 1 + 7 * 1.
  CHECK(comm_cost(app, topo, moved) == 9);
  CHECK(f.hosts() == std::vector<NodeId>{1, 2});  // value semantics
}

TEST_CASE("assignment lookups and errors") {
  const AppGraph app(2, 3, {1, 1}, {{1, 2, 5}});
  const Assignment f(app, {3, 1});
  CHECK(f.host_of_real(1) == 3);
  CHECK(f.host_of(2, app) == 1);
  CHECK(f.host_of(4, app) == 2);  // virtual sits at its pin
  CHECK(f.real_count() == 2);
  CHECK_THROWS_AS(Assignment(app, {1}), ValidationError);
  CHECK_THROWS_AS(Assignment(app, {1, 9}), ValidationError);
  CHECK_THROWS_AS(f.host_of_real(3), DomainError);
  CHECK_THROWS_AS(f.with_moved({}, 1), DomainError);
  CHECK_THROWS_AS(f.with_moved({1, 1}, 2), DomainError);
  CHECK_THROWS_AS(f.with_moved({4}, 2), DomainError);  // virtuals never move
  CHECK_THROWS_AS(f.with_moved({1}, 7), DomainError);
}

TEST_CASE("ordered and unordered summations agree everywhere") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenParams params;
    params.seed = seed;
    params.mode = seed % 3 == 0 ? TopologyMode::hierarchical : TopologyMode::tree;
    params.node_count = 2 + static_cast<int>(seed % 4);
    params.process_count = 1 + static_cast<int>(seed % 8);
    const Scenario sc = generate_scenario(params);
    const AppGraph app = sc.app();
    const Topology topo = sc.network();
    const Assignment f = sc.initial();
    CHECK(comm_cost(app, topo, f) == comm_cost_unordered(app, topo, f));
    CHECK(total_cost(app, topo, f).total == exec_cost(app) + comm_cost(app, topo, f));
  }
}

TEST_CASE("moving a group moves every member and nothing else") {
  const AppGraph app(4, 3, {1, 1, 1, 1}, {{1, 2, 3}});
  const Assignment f(app, {1, 1, 2, 3});
  const Assignment moved = f.with_moved({1, 3}, 3);
  CHECK(moved.hosts() == std::vector<NodeId>{3, 1, 3, 3});
}

TEST_CASE("co-located pairs cost nothing") {
  const Topology topo = Topology::tree(2, {{1, 2}});
  const AppGraph app(2, 2, {1, 1}, {{1, 2, 1000}});
  CHECK(comm_cost(app, topo, Assignment(app, {2, 2})) == 0);
  CHECK(comm_cost(app, topo, Assignment(app, {1, 2})) == 1000);
}
