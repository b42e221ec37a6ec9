#include <algorithm>
#include <stdexcept>
#include <string>

#include "tracelab/errors.hpp"
#include "tracelab/oracle.hpp"

namespace tracelab {

namespace {

// Running sum with Kahan compensation stored alongside.
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Law of the covered-edge mask at time t, marginalized over the position.
// Entry m is P(exactly the edges in m have been traversed).
std::vector<double> covered_mask_law(const Graph& g, std::span<const Edge> edges,
                                     std::size_t t, double budget) {
  const std::size_t n = g.num_vertices();
  const std::size_t ell = edges.size();
  if (n == 0) throw std::invalid_argument("coverage DP: empty graph");
  if (ell > kMaxDpEdges) {
    throw SizeLimitError("coverage DP: at most 12 edges", static_cast<double>(ell));
  }
  const std::size_t masks = std::size_t{1} << ell;
  const double required = static_cast<double>(n) * static_cast<double>(masks) *
                          static_cast<double>(t);
  if (required > budget) {
    throw SizeLimitError("coverage DP: n * 2^ell * t = " + std::to_string(required) +
                             " exceeds budget " + std::to_string(budget),
                         required);
  }
  for (std::size_t i = 0; i < ell; ++i) {
    if (!g.has_edge(edges[i].u, edges[i].v)) {
      throw std::invalid_argument("coverage DP: edge (" + std::to_string(edges[i].u) + "," +
                                  std::to_string(edges[i].v) + ") is not a host edge");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (edges[i] == edges[j]) throw std::invalid_argument("coverage DP: duplicate edge");
    }
  }

  // Per adjacency slot, the mask bit the traversal sets (0 if not listed).
  std::vector<std::size_t> offsets(n + 1, 0);
  for (Vertex u = 0; u < n; ++u) offsets[u + 1] = offsets[u] + g.degree(u);
  std::vector<std::uint32_t> slot_bit(offsets[n], 0);
  for (Vertex u = 0; u < n; ++u) {
    const auto nb = g.neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Edge e(u, nb[i]);
      for (std::size_t j = 0; j < ell; ++j) {
        if (edges[j] == e) slot_bit[offsets[u] + i] = 1u << j;
      }
    }
  }

  std::vector<double> current(n * masks, 0.0);
  for (std::size_t v = 0; v < n; ++v) current[v * masks] = 1.0 / static_cast<double>(n);
  std::vector<Compensated> next(n * masks);
  for (std::size_t step = 0; step < t; ++step) {
    std::fill(next.begin(), next.end(), Compensated{});
    for (Vertex u = 0; u < n; ++u) {
      const double stay = 1.0 / static_cast<double>(g.degree(u) + 1);
      const auto nb = g.neighbors(u);
      for (std::size_t m = 0; m < masks; ++m) {
        const double mass = current[u * masks + m];
        if (mass == 0.0) continue;
        const double share = mass * stay;
        next[u * masks + m].add(share);
        for (std::size_t i = 0; i < nb.size(); ++i) {
          next[nb[i] * masks + (m | slot_bit[offsets[u] + i])].add(share);
        }
      }
    }
    for (std::size_t i = 0; i < current.size(); ++i) current[i] = next[i].sum;
  }

  std::vector<Compensated> law(masks);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t m = 0; m < masks; ++m) law[m].add(current[v * masks + m]);
  }
  std::vector<double> out(masks);
  for (std::size_t m = 0; m < masks; ++m) out[m] = law[m].sum;
  return out;
}

double mass_containing(const std::vector<double>& law, std::size_t required) {
  if (required == 0) return 1.0;  // vacuous event, exactly
  Compensated total;
  for (std::size_t m = 0; m < law.size(); ++m) {
    if ((m & required) == required) total.add(law[m]);
  }
  return std::clamp(total.sum, 0.0, 1.0);
}

}  // namespace

double exact_containment_probability(const Graph& g, std::span<const Edge> edges,
                                     std::size_t t, double budget) {
  const auto law = covered_mask_law(g, edges, t, budget);
  return mass_containing(law, law.size() - 1);
}

JointCoverage joint_containment_probability(const Graph& g,
                                            std::span<const Edge> edges_a,
                                            std::span<const Edge> edges_b,
                                            std::size_t t, double budget) {
  std::vector<Edge> all;
  auto bit_of = [&](const Edge& e) {
    auto it = std::find(all.begin(), all.end(), e);
    if (it == all.end()) {
      all.push_back(e);
      return std::size_t{1} << (all.size() - 1);
    }
    return std::size_t{1} << static_cast<std::size_t>(it - all.begin());
  };
  std::size_t mask_a = 0;
  std::size_t mask_b = 0;
  for (const Edge& e : edges_a) mask_a |= bit_of(e);
  for (const Edge& e : edges_b) mask_b |= bit_of(e);
  const auto law = covered_mask_law(g, all, t, budget);
  return {mass_containing(law, mask_a | mask_b), mass_containing(law, mask_a),
          mass_containing(law, mask_b)};
}

}  // namespace tracelab
