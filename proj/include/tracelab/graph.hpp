#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tracelab/rng.hpp"

namespace tracelab {

using Vertex = std::uint32_t;

// Undirected edge, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  std::uint64_t key() const { return (std::uint64_t{u} << 32) | v; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct DegreeSummary {
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  double mean_degree = 0.0;
  std::size_t odd_count = 0;
};

// Simple undirected graph in compressed sparse row form. Neighbor lists are
// sorted ascending and the graph is immutable once built.
class Graph {
 public:
  Graph() = default;

  // Empty graph on n vertices.
  explicit Graph(std::size_t n);

  // Throws std::invalid_argument on self-loops, duplicate edges or
  // endpoints >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return adjacency_.size() / 2; }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }
  Vertex neighbor(Vertex v, std::size_t i) const {
    return adjacency_[offsets_[v] + i];
  }
  bool has_edge(Vertex u, Vertex v) const;

  // All edges with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

// K_n without materialized adjacency. Walks on very large complete graphs
// only ever need degree and indexed neighbor lookups.
class CompleteGraph {
 public:
  explicit CompleteGraph(std::size_t n);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return n_ * (n_ - 1) / 2; }
  std::size_t degree(Vertex) const { return n_ - 1; }
  Vertex neighbor(Vertex v, std::size_t i) const {
    return static_cast<Vertex>(i < v ? i : i + 1);
  }
  bool has_edge(Vertex u, Vertex v) const {
    return u != v && u < n_ && v < n_;
  }

 private:
  std::size_t n_;
};

// Anything a lazy walk can run on.
template <class H>
concept WalkHost = requires(const H& h, Vertex v, std::size_t i) {
  { h.num_vertices() } -> std::convertible_to<std::size_t>;
  { h.degree(v) } -> std::convertible_to<std::size_t>;
  { h.neighbor(v, i) } -> std::convertible_to<Vertex>;
  { h.has_edge(v, v) } -> std::convertible_to<bool>;
};

Graph complete_graph(std::size_t n);
Graph sample_gnp(std::size_t n, double p, Rng& rng);
Graph sample_gnm(std::size_t n, std::uint64_t m, Rng& rng);

// Components ordered by smallest vertex; each component is sorted.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

DegreeSummary degree_stats(const Graph& g);

// Decode a pair index in [0, n(n-1)/2) to the pair (u, v) with u < v, where
// pairs are ordered by v and then u.
Edge pair_from_index(std::uint64_t index);

}  // namespace tracelab
