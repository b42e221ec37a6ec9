#include "tracelab/subgraph.hpp"

#include <algorithm>
#include <stdexcept>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

constexpr Vertex kUnmapped = ~Vertex{0};

// Backtracking matcher. Pattern vertices are visited in an order where each
// vertex after the first in its component has an earlier neighbor, picking
// the most constrained (most mapped neighbors, then highest degree) next.
class Matcher {
 public:
  Matcher(const Graph& host, const Pattern& p, std::vector<char>* blocked)
      : host_(host), k_(static_cast<std::size_t>(p.k)), adj_(k_), blocked_(blocked) {
    for (const Edge& e : p.edges) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    plan_order();
    map_.assign(k_, kUnmapped);
    used_.assign(host.num_vertices(), 0);
  }

  // Calls on_match(map) for every embedding until it returns false.
  template <class F>
  void run(F&& on_match) {
    stop_ = false;
    if (k_ > host_.num_vertices()) return;
    extend(0, on_match);
  }

 private:
  void plan_order() {
    std::vector<char> placed(k_, 0);
    std::vector<int> mapped_neighbors(k_, 0);
    for (std::size_t step = 0; step < k_; ++step) {
      std::size_t best = k_;
      for (std::size_t v = 0; v < k_; ++v) {
        if (placed[v]) continue;
        if (best == k_ || mapped_neighbors[v] > mapped_neighbors[best] ||
            (mapped_neighbors[v] == mapped_neighbors[best] &&
             adj_[v].size() > adj_[best].size())) {
          best = v;
        }
      }
      placed[best] = 1;
      order_.push_back(static_cast<Vertex>(best));
      for (Vertex w : adj_[best]) ++mapped_neighbors[w];
    }
    // For each position, the earlier neighbors to check and an anchor to
    // draw candidates from.
    std::vector<std::size_t> position(k_);
    for (std::size_t i = 0; i < k_; ++i) position[order_[i]] = i;
    earlier_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      for (Vertex w : adj_[order_[i]]) {
        if (position[w] < i) earlier_[i].push_back(w);
      }
    }
  }

  bool admissible(std::size_t pos, Vertex cand) const {
    if (used_[cand]) return false;
    if (blocked_ && (*blocked_)[cand]) return false;
    const Vertex pv = order_[pos];
    if (host_.degree(cand) < adj_[pv].size()) return false;
    for (Vertex w : earlier_[pos]) {
      if (!host_.has_edge(map_[w], cand)) return false;
    }
    return true;
  }

  template <class F>
  void extend(std::size_t pos, F& on_match) {
    if (pos == k_) {
      if (!on_match(map_)) stop_ = true;
      return;
    }
    const Vertex pv = order_[pos];
    auto try_candidate = [&](Vertex cand) {
      if (!admissible(pos, cand)) return;
      map_[pv] = cand;
      used_[cand] = 1;
      extend(pos + 1, on_match);
      used_[cand] = 0;
      map_[pv] = kUnmapped;
    };
    if (!earlier_[pos].empty()) {
      // Anchor on the mapped neighbor with the smallest host degree.
      Vertex anchor = map_[earlier_[pos].front()];
      for (Vertex w : earlier_[pos]) {
        if (host_.degree(map_[w]) < host_.degree(anchor)) anchor = map_[w];
      }
      for (Vertex cand : host_.neighbors(anchor)) {
        try_candidate(cand);
        if (stop_) return;
      }
    } else {
      for (Vertex cand = 0; cand < host_.num_vertices(); ++cand) {
        try_candidate(cand);
        if (stop_) return;
      }
    }
  }

  const Graph& host_;
  std::size_t k_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<char>* blocked_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Vertex>> earlier_;
  Embedding map_;
  std::vector<char> used_;
  bool stop_ = false;
};

bool disjoint_search(const Graph& host, std::span<const Pattern> components,
                     std::size_t index, std::vector<char>& blocked,
                     std::vector<Embedding>& chosen) {
  if (index == components.size()) return true;
  Matcher matcher(host, components[index], &blocked);
  bool found = false;
  matcher.run([&](const Embedding& map) {
    for (Vertex v : map) blocked[v] = 1;
    chosen.push_back(map);
    if (disjoint_search(host, components, index + 1, blocked, chosen)) {
      found = true;
    } else {
      chosen.pop_back();
      for (Vertex v : map) blocked[v] = 0;
    }
    return !found;
  });
  return found;
}

Pattern without_isolated(const Pattern& p) {
  std::vector<int> relabel(static_cast<std::size_t>(p.k), -1);
  for (const Edge& e : p.edges) {
    relabel[e.u] = 0;
    relabel[e.v] = 0;
  }
  int next = 0;
  for (int& r : relabel) {
    if (r == 0) r = next++;
  }
  std::vector<Edge> edges;
  for (const Edge& e : p.edges) {
    edges.emplace_back(static_cast<Vertex>(relabel[e.u]), static_cast<Vertex>(relabel[e.v]));
  }
  return make_pattern(next, std::move(edges), p.name);
}

}  // namespace

std::optional<Embedding> contains(const Graph& host, const Pattern& p) {
  if (p.edges.size() > host.num_edges()) return std::nullopt;
  std::optional<Embedding> found;
  Matcher matcher(host, p, nullptr);
  matcher.run([&](const Embedding& map) {
    found = map;
    return false;
  });
  return found;
}

std::uint64_t count_embeddings(const Graph& host, const Pattern& p) {
  if (host.num_edges() > 1'000'000) {
    throw SizeLimitError("count_embeddings: host has more than 10^6 edges",
                         static_cast<double>(host.num_edges()));
  }
  if (p.edges.size() > host.num_edges()) return 0;
  std::uint64_t count = 0;
  Matcher matcher(host, p, nullptr);
  matcher.run([&](const Embedding&) {
    ++count;
    return true;
  });
  return count;
}

std::uint64_t count_copies(const Graph& host, const Pattern& p) {
  const std::uint64_t embeddings = count_embeddings(host, p);
  if (embeddings % p.aut_count != 0) {
    throw std::logic_error("count_copies: embeddings not divisible by |Aut|");
  }
  return embeddings / p.aut_count;
}

bool is_embedding(const Graph& host, const Pattern& p, const Embedding& map) {
  if (map.size() != static_cast<std::size_t>(p.k)) return false;
  std::vector<Vertex> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (!sorted.empty() && sorted.back() >= host.num_vertices()) return false;
  return std::all_of(p.edges.begin(), p.edges.end(), [&](const Edge& e) {
    return host.has_edge(map[e.u], map[e.v]);
  });
}

std::optional<std::vector<Embedding>> find_disjoint_copies(
    const Graph& host, std::span<const Pattern> components) {
  std::vector<char> blocked(host.num_vertices(), 0);
  std::vector<Embedding> chosen;
  if (!disjoint_search(host, components, 0, blocked, chosen)) return std::nullopt;
  return chosen;
}

bool trace_contains(std::span<const Vertex> steps, std::size_t n, const Pattern& p) {
  if (static_cast<std::size_t>(p.k) > n) return false;
  if (p.edges.empty()) return true;
  const CompactTrace ct = compact_trace(steps);
  // Isolated pattern vertices can always go to unused host vertices once
  // n >= k, so only the edge-bearing part has to be matched.
  if (p.has_isolated) return contains(ct.graph, without_isolated(p)).has_value();
  return contains(ct.graph, p).has_value();
}

std::optional<std::vector<Embedding>> segmented_disjoint_copies(
    const WalkRecord& w, std::span<const Pattern> components) {
  const std::size_t z = components.size();
  if (z == 0) return std::vector<Embedding>{};
  const std::size_t s = w.length() / z;
  std::vector<char> blocked(w.n, 0);
  std::vector<Embedding> chosen;
  for (std::size_t i = 0; i < z; ++i) {
    // Steps X_{is}..X_{(i+1)s - 1}, i.e. the times [is, (i+1)s - 1).
    const std::size_t first = i * s;
    const std::size_t count = s;
    if (count == 0) return std::nullopt;
    const CompactTrace ct = compact_trace(std::span(w.steps).subspan(first, count));
    std::vector<char> local_blocked(ct.labels.size(), 0);
    for (std::size_t j = 0; j < ct.labels.size(); ++j) local_blocked[j] = blocked[ct.labels[j]];
    Matcher matcher(ct.graph, components[i], &local_blocked);
    std::optional<Embedding> found;
    matcher.run([&](const Embedding& map) {
      found = map;
      return false;
    });
    if (!found) return std::nullopt;
    for (Vertex& v : *found) {
      v = ct.labels[v];
      blocked[v] = 1;
    }
    chosen.push_back(std::move(*found));
  }
  return chosen;
}

}  // namespace tracelab
