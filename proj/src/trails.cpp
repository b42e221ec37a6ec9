#include <algorithm>
#include <bit>
#include <set>
#include <utility>

#include "tracelab/errors.hpp"
#include "tracelab/pattern.hpp"

namespace tracelab {

namespace {

struct MultiEdge {
  Vertex a;
  Vertex b;
  bool is_virtual;
  Vertex other(Vertex x) const { return x == a ? b : a; }
};

// Euler circuit of a connected multigraph with all degrees even, as the
// sequence of (edge id, vertex reached) starting from `start`.
std::vector<std::pair<int, Vertex>> euler_circuit(
    const std::vector<MultiEdge>& edges, std::size_t n, Vertex start) {
  std::vector<std::vector<int>> incident(n);
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    incident[edges[static_cast<std::size_t>(id)].a].push_back(id);
    incident[edges[static_cast<std::size_t>(id)].b].push_back(id);
  }
  std::vector<char> used(edges.size(), 0);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::pair<Vertex, int>> stack{{start, -1}};
  std::vector<std::pair<int, Vertex>> popped;
  while (!stack.empty()) {
    const auto [v, via] = stack.back();
    auto& cur = cursor[v];
    while (cur < incident[v].size() && used[static_cast<std::size_t>(incident[v][cur])]) ++cur;
    if (cur < incident[v].size()) {
      const int id = incident[v][cur];
      used[static_cast<std::size_t>(id)] = 1;
      stack.emplace_back(edges[static_cast<std::size_t>(id)].other(v), id);
    } else {
      popped.emplace_back(via, v);
      stack.pop_back();
    }
  }
  std::reverse(popped.begin(), popped.end());
  // popped[0] is (-1, start); every later entry is the edge into its vertex.
  return popped;
}

// Every trail of the pattern, as a bitmask over edge indices.
void collect_trails(const Pattern& p, Vertex at, std::uint32_t used,
                    std::vector<char>& is_trail) {
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (used & (1u << i)) continue;
    const Edge& e = p.edges[i];
    if (e.u != at && e.v != at) continue;
    const std::uint32_t next = used | (1u << i);
    if (!is_trail[next]) {
      is_trail[next] = 1;
    }
    collect_trails(p, e.u == at ? e.v : e.u, next, is_trail);
  }
}

}  // namespace

TrailDecomposition trail_decomposition(const Pattern& p) {
  if (p.edges.empty()) {
    throw std::invalid_argument("trail_decomposition: pattern has no edges");
  }
  TrailDecomposition out;
  const std::size_t k = static_cast<std::size_t>(p.k);
  const Graph g = p.graph();
  for (const auto& comp : connected_components(g)) {
    std::vector<MultiEdge> edges;
    std::vector<Vertex> odd;
    for (Vertex v : comp) {
      if (g.degree(v) % 2 == 1) odd.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (v < w) edges.push_back({v, w, false});
      }
    }
    if (edges.empty()) continue;
    // comp and hence odd are ascending, so pairing is by vertex id.
    for (std::size_t i = 0; i + 1 < odd.size(); i += 2) {
      edges.push_back({odd[i], odd[i + 1], true});
    }
    const auto circuit = euler_circuit(edges, k, edges.front().a);

    // Rotate so the walk starts right after a virtual edge.
    std::size_t begin = 0;
    for (std::size_t i = 1; i < circuit.size(); ++i) {
      if (edges[static_cast<std::size_t>(circuit[i].first)].is_virtual) {
        begin = i;
        break;
      }
    }
    const std::size_t m = circuit.size() - 1;
    std::vector<Vertex> current{circuit[begin].second};
    for (std::size_t step = 1; step <= m; ++step) {
      const std::size_t idx = (begin + step - 1) % m + 1;
      const auto [id, reached] = circuit[idx];
      if (edges[static_cast<std::size_t>(id)].is_virtual) {
        if (current.size() > 1) out.trails.push_back(std::move(current));
        current = {reached};
      } else {
        current.push_back(reached);
      }
    }
    if (current.size() > 1) out.trails.push_back(std::move(current));
  }
  out.part_count = static_cast<int>(out.trails.size());
  return out;
}

int min_trail_cover_bruteforce(const Pattern& p) {
  const std::size_t ell = p.edges.size();
  if (ell > 8) {
    throw SizeLimitError("min_trail_cover_bruteforce: at most 8 edges",
                         static_cast<double>(ell));
  }
  if (ell == 0) return 0;
  const std::uint32_t full = (1u << ell) - 1;
  std::vector<char> is_trail(full + 1, 0);
  for (Vertex v = 0; v < static_cast<Vertex>(p.k); ++v) collect_trails(p, v, 0, is_trail);

  constexpr int kInf = 1 << 20;
  std::vector<int> best(full + 1, kInf);
  best[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    // Every partition of mask has exactly one part holding its lowest edge.
    for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low) || !is_trail[sub]) continue;
      best[mask] = std::min(best[mask], 1 + best[mask ^ sub]);
    }
  }
  return best[full];
}

bool is_valid_trail_cover(const Pattern& p, const TrailDecomposition& d) {
  std::set<Edge> remaining(p.edges.begin(), p.edges.end());
  for (const auto& trail : d.trails) {
    if (trail.size() < 2) return false;
    for (std::size_t i = 1; i < trail.size(); ++i) {
      if (trail[i - 1] == trail[i]) return false;
      // Erasing enforces both membership and no reuse across trails.
      if (remaining.erase(Edge(trail[i - 1], trail[i])) != 1) return false;
    }
  }
  return remaining.empty() && d.part_count == static_cast<int>(d.trails.size());
}

}  // namespace tracelab
