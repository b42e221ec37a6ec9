#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/pattern.hpp"
#include "tracelab/rng.hpp"

namespace tracelab::testing {

// Random connected graph with k vertices and ell edges: a random spanning
// tree plus random extra pairs. Requires k - 1 <= ell <= k(k-1)/2.
inline std::vector<Edge> random_connected_edges(int k, int ell, Rng& rng) {
  std::set<Edge> edges;
  for (int v = 1; v < k; ++v) {
    const auto parent = static_cast<Vertex>(uniform_upto(rng, static_cast<std::uint64_t>(v - 1)));
    edges.emplace(parent, static_cast<Vertex>(v));
  }
  while (static_cast<int>(edges.size()) < ell) {
    const auto a = static_cast<Vertex>(uniform_upto(rng, static_cast<std::uint64_t>(k - 1)));
    const auto b = static_cast<Vertex>(uniform_upto(rng, static_cast<std::uint64_t>(k - 1)));
    if (a != b) edges.emplace(a, b);
  }
  return {edges.begin(), edges.end()};
}

inline Graph random_small_graph(std::size_t n, double p, Rng& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    for (Vertex u = 0; u < v; ++u) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

// Adjacency matrix lookups only; no use of the library's matcher.
inline bool edge_in(const std::vector<Edge>& edges, Vertex a, Vertex b) {
  return std::find(edges.begin(), edges.end(), Edge(a, b)) != edges.end();
}

// Calls f(map) for every injective map pattern -> host preserving edges.
template <class F>
void for_each_embedding_bruteforce(const Graph& host, const Pattern& p, F&& f) {
  const std::vector<Edge> host_edges = host.edges();
  std::vector<Vertex> map(static_cast<std::size_t>(p.k));
  std::vector<char> used(host.num_vertices(), 0);
  auto rec = [&](auto& self, std::size_t i) -> void {
    if (i == map.size()) {
      for (const Edge& e : p.edges) {
        if (!edge_in(host_edges, map[e.u], map[e.v])) return;
      }
      f(map);
      return;
    }
    for (Vertex v = 0; v < host.num_vertices(); ++v) {
      if (used[v]) continue;
      used[v] = 1;
      map[i] = v;
      self(self, i + 1);
      used[v] = 0;
    }
  };
  rec(rec, 0);
}

inline std::uint64_t count_embeddings_bruteforce(const Graph& host, const Pattern& p) {
  std::uint64_t count = 0;
  for_each_embedding_bruteforce(host, p, [&](const std::vector<Vertex>&) { ++count; });
  return count;
}

// Exhaustive search for vertex-disjoint embeddings of every component.
inline bool disjoint_copies_bruteforce(const Graph& host, const std::vector<Pattern>& comps) {
  std::vector<std::vector<std::vector<Vertex>>> all(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for_each_embedding_bruteforce(host, comps[i],
                                  [&](const std::vector<Vertex>& m) { all[i].push_back(m); });
  }
  std::vector<char> used(host.num_vertices(), 0);
  auto rec = [&](auto& self, std::size_t i) -> bool {
    if (i == comps.size()) return true;
    for (const auto& m : all[i]) {
      if (std::any_of(m.begin(), m.end(), [&](Vertex v) { return used[v]; })) continue;
      for (Vertex v : m) used[v] = 1;
      const bool ok = self(self, i + 1);
      for (Vertex v : m) used[v] = 0;
      if (ok) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

// All labelled trees on k vertices via Pruefer sequences.
inline std::vector<std::vector<Edge>> all_labelled_trees(int k) {
  std::vector<std::vector<Edge>> out;
  if (k == 1) return {{}};
  if (k == 2) return {{Edge(0, 1)}};
  std::vector<int> seq(static_cast<std::size_t>(k - 2), 0);
  while (true) {
    std::vector<int> degree(static_cast<std::size_t>(k), 1);
    for (int x : seq) ++degree[static_cast<std::size_t>(x)];
    std::vector<Edge> edges;
    for (int x : seq) {
      for (int leaf = 0; leaf < k; ++leaf) {
        if (degree[static_cast<std::size_t>(leaf)] == 1) {
          edges.emplace_back(static_cast<Vertex>(leaf), static_cast<Vertex>(x));
          --degree[static_cast<std::size_t>(leaf)];
          --degree[static_cast<std::size_t>(x)];
          break;
        }
      }
    }
    std::vector<Vertex> last;
    for (int v = 0; v < k; ++v) {
      if (degree[static_cast<std::size_t>(v)] == 1) last.push_back(static_cast<Vertex>(v));
    }
    edges.emplace_back(last[0], last[1]);
    out.push_back(edges);
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == k) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return out;
}

}  // namespace tracelab::testing
