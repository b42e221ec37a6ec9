#include "tracelab/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tracelab {

std::size_t WalkRecord::lazy_steps() const {
  std::size_t lazy = 0;
  for (std::size_t i = 1; i < steps.size(); ++i) lazy += steps[i - 1] == steps[i];
  return lazy;
}

std::vector<Edge> trace_edges(std::span<const Vertex> steps) {
  std::vector<Edge> edges;
  edges.reserve(steps.size());
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i - 1] != steps[i]) edges.emplace_back(steps[i - 1], steps[i]);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

Graph trace(const WalkRecord& w) { return Graph::from_edges(w.n, trace_edges(w.steps)); }

Graph trace(const WalkRecord& w, std::size_t t) {
  if (t >= w.steps.size()) throw std::out_of_range("trace: prefix longer than the walk");
  return Graph::from_edges(w.n, trace_edges(std::span(w.steps).first(t + 1)));
}

CompactTrace compact_trace(std::span<const Vertex> steps) {
  CompactTrace out;
  out.labels.assign(steps.begin(), steps.end());
  std::sort(out.labels.begin(), out.labels.end());
  out.labels.erase(std::unique(out.labels.begin(), out.labels.end()), out.labels.end());
  auto local = [&](Vertex v) {
    return static_cast<Vertex>(
        std::lower_bound(out.labels.begin(), out.labels.end(), v) - out.labels.begin());
  };
  std::vector<Edge> edges;
  for (const Edge& e : trace_edges(steps)) edges.emplace_back(local(e.u), local(e.v));
  std::sort(edges.begin(), edges.end());
  out.graph = Graph::from_edges(out.labels.size(), edges);
  return out;
}

EdgeMultiplicities edge_multiplicities(const WalkRecord& w) {
  std::vector<Edge> traversed;
  traversed.reserve(w.steps.size());
  for (std::size_t i = 1; i < w.steps.size(); ++i) {
    if (w.steps[i - 1] != w.steps[i]) traversed.emplace_back(w.steps[i - 1], w.steps[i]);
  }
  std::sort(traversed.begin(), traversed.end());
  EdgeMultiplicities out;
  for (std::size_t i = 0; i < traversed.size();) {
    std::size_t j = i;
    while (j < traversed.size() && traversed[j] == traversed[i]) ++j;
    const auto count = static_cast<std::uint32_t>(j - i);
    out.counts.emplace_back(traversed[i], count);
    out.max = std::max(out.max, count);
    i = j;
  }
  return out;
}

std::vector<std::uint64_t> exit_counts(const WalkRecord& w) {
  std::vector<std::uint64_t> eta(w.n, 0);
  for (std::size_t i = 1; i < w.steps.size(); ++i) {
    if (w.steps[i - 1] != w.steps[i]) ++eta[w.steps[i - 1]];
  }
  return eta;
}

TimeSet make_time_set(std::vector<std::size_t> times, std::size_t buffer) {
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  TimeSet ts;
  ts.buffer = buffer;
  ts.w = times.size();
  for (std::size_t i = 0; i < times.size(); ++i) {
    // A run ends at i when i + 1 is absent; the successor of t is never in W.
    if (i + 1 == times.size() || times[i + 1] != times[i] + 1) ++ts.r;
    if (i > 0 && times[i] != times[i - 1] + 1 && times[i] - (times[i - 1] + 1) < 3 * buffer) {
      ++ts.q;
    }
  }
  ts.times = std::move(times);
  return ts;
}

std::size_t buffer_length(std::size_t n, double c) {
  if (n < 2) return 1;
  const double b = std::ceil(c * std::log(static_cast<double>(n)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(b));
}

void StreamingWalkStats::observe(std::size_t i, Vertex v) {
  if (i > 0) {
    ++length_;
    if (v == prev_) {
      ++lazy_;
    } else {
      ++exits_[prev_];
      const std::uint32_t count = ++multiplicity_[Edge(prev_, v).key()];
      max_multiplicity_ = std::max(max_multiplicity_, count);
    }
  }
  prev_ = v;
}

std::vector<Edge> StreamingWalkStats::trace_edges() const {
  std::vector<Edge> edges;
  edges.reserve(multiplicity_.size());
  for (const auto& [key, count] : multiplicity_) {
    edges.emplace_back(static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace tracelab
