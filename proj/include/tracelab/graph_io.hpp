#pragma once

#include <iosfwd>
#include <string>

#include "tracelab/graph.hpp"

namespace tracelab {

// Edge-list text: a header line "n m" followed by m lines "u v" with
// 0 <= u < v < n. Blank lines and lines starting with '#' are skipped.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace tracelab
