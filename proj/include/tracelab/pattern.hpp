#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "tracelab/graph.hpp"

namespace tracelab {

using Rational = boost::rational<std::int64_t>;

inline constexpr int kMaxPatternVertices = 12;
inline constexpr int kMaxPatternEdges = 20;

// A fixed small graph H together with the invariants the threshold results
// are stated in terms of.
struct Pattern {
  std::string name;
  int k = 0;                // vertices
  std::vector<Edge> edges;  // ell = edges.size()
  Rational m0{0};           // maximum subgraph edge density
  int rho = 0;              // minimum number of edge-disjoint trails covering E
  int theta = 0;            // max over components of the odd-degree count
  std::uint64_t aut_count = 1;
  int component_count = 0;
  bool has_isolated = false;

  int ell() const { return static_cast<int>(edges.size()); }
  bool is_forest() const { return ell() == k - component_count; }
  Graph graph() const {
    return Graph::from_edges(static_cast<std::size_t>(k), edges);
  }
};

// Builds a pattern and computes every invariant. Throws std::invalid_argument
// on self-loops, duplicate edges, out of range endpoints or size limits.
Pattern make_pattern(int k, std::vector<Edge> edges, std::string name = {});

// Accepts a built-in name ("triangle", "edge", "path-L", "star-D",
// "cycle-L", "K-r"), JSON {"k": int, "edges": [[u, v], ...]}, or edge-list
// text "u v" pairs separated by newlines, commas or semicolons.
// Throws ParseError on malformed input.
Pattern parse_pattern(std::string_view spec);
Pattern builtin_pattern(std::string_view name);

// Max over non-empty vertex subsets S of e(S)/|S|. Throws
// std::invalid_argument for a pattern with no edges.
Rational max_density(const Pattern& p);

// Per-component odd-degree counts for components that have edges.
std::vector<int> component_odd_counts(const Pattern& p);

// Connected components with at least one vertex, relabeled to 0..k_i-1.
std::vector<Pattern> pattern_components(const Pattern& p);

std::uint64_t automorphism_count(const Pattern& p);

struct TrailDecomposition {
  std::vector<std::vector<Vertex>> trails;  // vertex sequences
  int part_count = 0;
};

TrailDecomposition trail_decomposition(const Pattern& p);

// Exact minimum trail cover by exhaustive search over trails. Throws
// SizeLimitError when the pattern has more than 8 edges.
int min_trail_cover_bruteforce(const Pattern& p);

// Checks that the trails are edge-disjoint, use only pattern edges and
// cover every pattern edge exactly once.
bool is_valid_trail_cover(const Pattern& p, const TrailDecomposition& d);

enum class BaseModel { complete, gnp, gnm };
enum class ThresholdFormula { cyclic_gnp, tree_complete, forest_complete, path_constant };

std::string_view to_string(BaseModel b);
std::string_view to_string(ThresholdFormula f);
BaseModel parse_base_model(std::string_view s);

struct ThresholdPrediction {
  BaseModel base = BaseModel::complete;
  Rational exponent{0};
  ThresholdFormula formula = ThresholdFormula::cyclic_gnp;
  bool applicable = true;
  std::string reason;  // why not applicable, or caveats such as isolated vertices
};

// Predicted exponent a with threshold t0(n) = n^a. G(n,m) is treated like
// G(n,p).
ThresholdPrediction predicted_threshold(const Pattern& p, BaseModel base);

}  // namespace tracelab
