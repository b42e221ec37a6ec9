#include "tracelab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace tracelab {

Graph::Graph(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n > std::numeric_limits<Vertex>::max()) {
    throw std::invalid_argument("graph: too many vertices");
  }
  Graph g(n);
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      throw std::invalid_argument("graph: self-loop at vertex " +
                                  std::to_string(e.u));
    }
    if (e.v >= n) {
      throw std::invalid_argument("graph: endpoint " + std::to_string(e.v) +
                                  " out of range for n=" + std::to_string(n));
    }
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

  g.adjacency_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.adjacency_[cursor[e.u]++] = e.v;
    g.adjacency_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw std::invalid_argument("graph: duplicate edge at vertex " +
                                  std::to_string(v));
    }
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

CompleteGraph::CompleteGraph(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("complete graph needs n >= 1");
  if (n > std::numeric_limits<Vertex>::max()) {
    throw std::invalid_argument("complete graph: too many vertices");
  }
}

Edge pair_from_index(std::uint64_t index) {
  auto v = static_cast<std::uint64_t>(
      (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0);
  // Correct floating point drift in either direction.
  while (v * (v - 1) / 2 > index) --v;
  while ((v + 1) * v / 2 <= index) ++v;
  const std::uint64_t u = index - v * (v - 1) / 2;
  return Edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
}

Graph complete_graph(std::size_t n) {
  if (n == 0) throw std::invalid_argument("complete graph needs n >= 1");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex v = 1; v < n; ++v) {
    for (Vertex u = 0; u < v; ++u) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

namespace {

// Pair indices selected independently with probability q, by geometric
// skipping. Runs in time proportional to the number selected.
std::vector<std::uint64_t> skip_sample(std::uint64_t total, double q, Rng& rng) {
  std::vector<std::uint64_t> picked;
  if (q <= 0.0 || total == 0) return picked;
  picked.reserve(static_cast<std::size_t>(static_cast<double>(total) * q * 1.1) + 16);
  if (q >= 1.0) {
    for (std::uint64_t i = 0; i < total; ++i) picked.push_back(i);
    return picked;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_miss = std::log1p(-q);
  std::uint64_t next = 0;
  while (true) {
    const double skip = std::floor(std::log1p(-unit(rng)) / log_miss);
    if (skip >= static_cast<double>(total - next)) break;
    next += static_cast<std::uint64_t>(skip);
    picked.push_back(next);
    ++next;
    if (next >= total) break;
  }
  return picked;
}

}  // namespace

Graph sample_gnp(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("sample_gnp: p must lie in [0, 1]");
  }
  const std::uint64_t total = n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
  std::vector<Edge> edges;
  if (p <= 0.5) {
    for (std::uint64_t idx : skip_sample(total, p, rng)) {
      edges.push_back(pair_from_index(idx));
    }
  } else {
    const auto missing = skip_sample(total, 1.0 - p, rng);
    edges.reserve(total - missing.size());
    std::size_t cursor = 0;
    std::uint64_t idx = 0;
    for (Vertex v = 1; v < n; ++v) {
      for (Vertex u = 0; u < v; ++u, ++idx) {
        if (cursor < missing.size() && missing[cursor] == idx) {
          ++cursor;
          continue;
        }
        edges.emplace_back(u, v);
      }
    }
  }
  return Graph::from_edges(n, edges);
}

Graph sample_gnm(std::size_t n, std::uint64_t m, Rng& rng) {
  const std::uint64_t total = n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
  if (m > total) {
    throw std::invalid_argument("sample_gnm: m=" + std::to_string(m) +
                                " exceeds n(n-1)/2=" + std::to_string(total));
  }
  // Partial Fisher-Yates over pair indices; displaced slots live in a map.
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  swapped.reserve(static_cast<std::size_t>(2 * m));
  auto slot = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::uint64_t j = i + uniform_upto(rng, total - 1 - i);
    const std::uint64_t chosen = slot(j);
    swapped[j] = slot(i);
    edges.push_back(pair_from_index(chosen));
  }
  return Graph::from_edges(n, edges);
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (Vertex v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) {
  return g.num_vertices() <= 1 || connected_components(g).size() == 1;
}

DegreeSummary degree_stats(const Graph& g) {
  DegreeSummary s;
  const std::size_t n = g.num_vertices();
  if (n == 0) return s;
  s.min_degree = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t d = g.degree(v);
    s.min_degree = std::min(s.min_degree, d);
    s.max_degree = std::max(s.max_degree, d);
    total += d;
    if (d % 2 == 1) ++s.odd_count;
  }
  s.mean_degree = static_cast<double>(total) / static_cast<double>(n);
  return s;
}

}  // namespace tracelab
