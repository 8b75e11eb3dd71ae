#include "mincut.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "errors.hpp"

namespace dra {

FlowNetwork::FlowNetwork(int vertex_count, int source, int sink)
    : vertex_count_(vertex_count), source_(source), sink_(sink) {
  if (vertex_count < 2) throw DomainError("flow network needs at least two vertices");
  if (source < 0 || source >= vertex_count || sink < 0 || sink >= vertex_count) {
    throw DomainError("flow network terminal out of range");
  }
  if (source == sink) throw DomainError("flow network source equals sink");
  adj_.assign(vertex_count, {});
}

void FlowNetwork::add_edge(int u, int v, Cost capacity) {
  if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_) {
    throw DomainError("flow edge endpoint out of range");
  }
  if (u == v) throw DomainError("flow edge is a self loop");
  if (capacity < 0) throw DomainError("flow edge capacity must be nonnegative");
  adj_[u].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({u, v, capacity});
  adj_[v].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({v, u, capacity});
}

MinCutResult FlowNetwork::min_cut() const {
  std::vector<Cost> residual(arcs_.size());
  for (size_t e = 0; e < arcs_.size(); ++e) residual[e] = arcs_[e].cap;

  Cost flow = 0;
  std::vector<int> through(vertex_count_, -1);  // arc that reached the vertex
  for (;;) {
    std::fill(through.begin(), through.end(), -1);
    std::deque<int> queue{source_};
    through[source_] = -2;
    while (!queue.empty() && through[sink_] == -1) {
      const int x = queue.front();
      queue.pop_front();
      for (int e : adj_[x]) {
        if (residual[e] > 0 && through[arcs_[e].to] == -1) {
          through[arcs_[e].to] = e;
          queue.push_back(arcs_[e].to);
        }
      }
    }
    if (through[sink_] == -1) break;

    Cost push = std::numeric_limits<Cost>::max();
    for (int v = sink_; v != source_; v = arcs_[through[v]].from) {
      push = std::min(push, residual[through[v]]);
    }
    for (int v = sink_; v != source_; v = arcs_[through[v]].from) {
      residual[through[v]] -= push;
      residual[through[v] ^ 1] += push;
    }
    flow += push;
  }

  // Vertices that still reach the sink: v joins when some residual arc v->w
  // leads into the set. Arc e's reverse is e^1, so scanning w's arc list
  // exposes exactly the arcs pointing at w.
  std::vector<char> reaches(vertex_count_, 0);
  std::deque<int> queue{sink_};
  reaches[sink_] = 1;
  while (!queue.empty()) {
    const int w = queue.front();
    queue.pop_front();
    for (int e : adj_[w]) {
      const int v = arcs_[e].to;
      if (!reaches[v] && residual[e ^ 1] > 0) {
        reaches[v] = 1;
        queue.push_back(v);
      }
    }
  }
  if (reaches[source_]) throw InternalError("min cut left an augmenting path");

  Cost crossing = 0;
  for (size_t e = 0; e < arcs_.size(); e += 2) {
    if (reaches[arcs_[e].from] != reaches[arcs_[e].to]) crossing += arcs_[e].cap;
  }
  if (crossing != flow) throw InternalError("max flow does not match its cut");

  MinCutResult out;
  out.value = flow;
  for (int v = 0; v < vertex_count_; ++v) {
    if (reaches[v]) out.sink_side.push_back(v);
  }
  return out;
}

}  // namespace dra
