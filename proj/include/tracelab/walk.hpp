#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/rng.hpp"

namespace tracelab {

// Vertex sequence X_0..X_t of one lazy walk on a host with n vertices.
struct WalkRecord {
  std::size_t n = 0;
  std::vector<Vertex> steps;

  std::size_t length() const { return steps.empty() ? 0 : steps.size() - 1; }
  std::size_t lazy_steps() const;
};

// Lazy simple random walk: X_0 uniform on the host, then X_{i+1} uniform on
// {X_i} together with the neighbors of X_i. Calls visit(i, X_i) for
// i = 0..t in order. Exactly one draw per position, so a walk of length t is
// a prefix of the walk of length t' > t under the same generator state.
template <WalkHost Host, class Visitor>
void walk_steps(const Host& host, std::size_t t, Rng& rng, Visitor&& visit) {
  const std::size_t n = host.num_vertices();
  if (n == 0) throw std::invalid_argument("walk: host has no vertices");
  auto v = static_cast<Vertex>(uniform_upto(rng, n - 1));
  visit(std::size_t{0}, v);
  for (std::size_t i = 1; i <= t; ++i) {
    const std::size_t d = host.degree(v);
    const auto pick = static_cast<std::size_t>(uniform_upto(rng, d));
    if (pick < d) v = host.neighbor(v, pick);
    visit(i, v);
  }
}

template <WalkHost Host>
WalkRecord run_walk(const Host& host, std::size_t t, Rng& rng) {
  WalkRecord w;
  w.n = host.num_vertices();
  w.steps.resize(t + 1);
  walk_steps(host, t, rng, [&](std::size_t i, Vertex v) { w.steps[i] = v; });
  return w;
}

// Distinct non-loop edges {X_{s-1}, X_s} for 0 < s <= t, sorted.
std::vector<Edge> trace_edges(std::span<const Vertex> steps);

// Trace graph on the host's full vertex set.
Graph trace(const WalkRecord& w);
// Trace of the prefix X_0..X_t; throws std::out_of_range past the end.
Graph trace(const WalkRecord& w, std::size_t t);

// Trace relabeled onto the vertices the walk touched; labels[i] is the host
// vertex behind compact vertex i. Cheap even when the host is huge.
struct CompactTrace {
  Graph graph;
  std::vector<Vertex> labels;
};
CompactTrace compact_trace(std::span<const Vertex> steps);

struct EdgeMultiplicities {
  std::vector<std::pair<Edge, std::uint32_t>> counts;  // sorted by edge
  std::uint32_t max = 0;
};
EdgeMultiplicities edge_multiplicities(const WalkRecord& w);

// eta(v, t): number of i in [t] with X_{i-1} = v != X_i. Length n.
std::vector<std::uint64_t> exit_counts(const WalkRecord& w);

// Run statistics of a set of step indices W within [t].
struct TimeSet {
  std::vector<std::size_t> times;  // sorted, distinct
  std::size_t buffer = 0;          // B; a run is defective if its gap is < 3B
  std::size_t w = 0;
  std::size_t r = 0;  // number of maximal runs of consecutive integers
  std::size_t q = 0;  // runs after the first whose preceding gap is < 3B
};
TimeSet make_time_set(std::vector<std::size_t> times, std::size_t buffer);

// B = ceil(c ln n), at least 1.
std::size_t buffer_length(std::size_t n, double c = 3.0);

// W = {i in [t] : {X_{i-1}, X_i} is one of the embedded edges}. Throws
// std::invalid_argument if an embedded edge is not an edge of the host.
template <WalkHost Host>
TimeSet hit_times(const Host& host, const WalkRecord& w,
                  std::span<const Edge> embedded, std::size_t buffer);

// Online statistics for walks too long to store.
class StreamingWalkStats {
 public:
  explicit StreamingWalkStats(std::size_t n) : exits_(n, 0) {}

  void observe(std::size_t i, Vertex v);

  std::size_t length() const { return length_; }
  std::size_t lazy_steps() const { return lazy_; }
  std::size_t trace_edge_count() const { return multiplicity_.size(); }
  std::uint32_t max_multiplicity() const { return max_multiplicity_; }
  const std::vector<std::uint64_t>& exit_counts() const { return exits_; }
  std::vector<Edge> trace_edges() const;

 private:
  std::vector<std::uint64_t> exits_;
  std::unordered_map<std::uint64_t, std::uint32_t> multiplicity_;
  std::uint32_t max_multiplicity_ = 0;
  std::size_t length_ = 0;
  std::size_t lazy_ = 0;
  Vertex prev_ = 0;
};

// ---------------------------------------------------------------------------

template <WalkHost Host>
TimeSet hit_times(const Host& host, const WalkRecord& w,
                  std::span<const Edge> embedded, std::size_t buffer) {
  std::vector<std::uint64_t> keys;
  keys.reserve(embedded.size());
  for (const Edge& e : embedded) {
    if (!host.has_edge(e.u, e.v)) {
      throw std::invalid_argument("hit_times: embedded edge is not a host edge");
    }
    keys.push_back(e.key());
  }
  std::vector<std::size_t> times;
  for (std::size_t i = 1; i < w.steps.size(); ++i) {
    if (w.steps[i - 1] == w.steps[i]) continue;
    const std::uint64_t key = Edge(w.steps[i - 1], w.steps[i]).key();
    for (std::uint64_t k : keys) {
      if (k == key) {
        times.push_back(i);
        break;
      }
    }
  }
  return make_time_set(std::move(times), buffer);
}

}  // namespace tracelab
