#include "tracelab/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

bool is_skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    std::istringstream fields(line);
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw ParseError("edge list: expected two integers", line_no, 1);
    }
    if (a < 0 || b < 0) {
      throw ParseError("edge list: negative value", line_no, 1);
    }
    if (!have_header) {
      n = static_cast<std::uint64_t>(a);
      m = static_cast<std::uint64_t>(b);
      have_header = true;
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (a >= b || static_cast<std::uint64_t>(b) >= n) {
      throw ParseError("edge list: need 0 <= u < v < n", line_no, 1);
    }
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!have_header) throw ParseError("edge list: missing header", line_no, 0);
  if (edges.size() != m) {
    throw ParseError("edge list: header announces " + std::to_string(m) +
                         " edges, found " + std::to_string(edges.size()),
                     line_no, 0);
  }
  try {
    return Graph::from_edges(static_cast<std::size_t>(n), edges);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("edge list: ") + e.what(), line_no, 0);
  }
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace tracelab
