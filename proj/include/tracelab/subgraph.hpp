#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/pattern.hpp"
#include "tracelab/walk.hpp"

namespace tracelab {

// Pattern vertex i maps to host vertex map[i]. Injective, edge preserving.
using Embedding = std::vector<Vertex>;

// Subgraph (not induced) containment.
std::optional<Embedding> contains(const Graph& host, const Pattern& p);

// Number of injective edge-preserving maps. Throws SizeLimitError for hosts
// with more than 10^6 edges.
std::uint64_t count_embeddings(const Graph& host, const Pattern& p);

// count_embeddings / aut_count; throws std::logic_error if not divisible.
std::uint64_t count_copies(const Graph& host, const Pattern& p);

bool is_embedding(const Graph& host, const Pattern& p, const Embedding& map);

// Pairwise vertex-disjoint embeddings of the components, searched with
// backtracking across components.
std::optional<std::vector<Embedding>> find_disjoint_copies(
    const Graph& host, std::span<const Pattern> components);

// Whether a walk's trace contains the pattern, with the trace taken on all
// w.n host vertices. Uses the compact trace, so it is cheap on huge hosts.
bool trace_contains(std::span<const Vertex> steps, std::size_t n, const Pattern& p);

// Segment-by-segment search: component i must appear in the trace of steps
// [(i-1)s, is-1) with s = floor(t/z), vertex-disjoint from the copies found
// in earlier segments. Success certifies that the whole trace contains the
// forest; failure says nothing.
std::optional<std::vector<Embedding>> segmented_disjoint_copies(
    const WalkRecord& w, std::span<const Pattern> components);

}  // namespace tracelab
