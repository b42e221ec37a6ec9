#include "tracelab/pattern.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

using Masks = std::vector<std::uint32_t>;

Masks adjacency_masks(const Pattern& p) {
  Masks adj(static_cast<std::size_t>(p.k), 0);
  for (const Edge& e : p.edges) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  return adj;
}

std::vector<int> degrees(const Pattern& p) {
  std::vector<int> deg(static_cast<std::size_t>(p.k), 0);
  for (const Edge& e : p.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

std::vector<std::uint32_t> component_masks(const Pattern& p) {
  const Masks adj = adjacency_masks(p);
  std::vector<std::uint32_t> comps;
  std::uint32_t seen = 0;
  for (int s = 0; s < p.k; ++s) {
    if (seen & (1u << s)) continue;
    std::uint32_t comp = 1u << s;
    std::uint32_t frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) {
        next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
      }
      frontier = next & ~comp;
      comp |= next;
    }
    seen |= comp;
    comps.push_back(comp);
  }
  return comps;
}

void automorphism_extend(const Masks& adj, const std::vector<int>& deg,
                         std::vector<int>& image, std::uint32_t used,
                         int depth, std::uint64_t& count) {
  const int k = static_cast<int>(adj.size());
  if (depth == k) {
    ++count;
    return;
  }
  for (int cand = 0; cand < k; ++cand) {
    if ((used & (1u << cand)) || deg[cand] != deg[depth]) continue;
    bool ok = true;
    for (int u = 0; u < depth && ok; ++u) {
      const bool in_pattern = adj[depth] & (1u << u);
      const bool in_image = adj[cand] & (1u << image[u]);
      ok = in_pattern == in_image;
    }
    if (!ok) continue;
    image[depth] = cand;
    automorphism_extend(adj, deg, image, used | (1u << cand), depth + 1, count);
  }
}

[[noreturn]] void parse_fail(const std::string& what, std::string_view text,
                             std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw ParseError("pattern: " + what, line, column);
}

int parse_suffix(std::string_view name, std::string_view prefix) {
  const std::string_view digits = name.substr(prefix.size());
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw ParseError("pattern: bad size in built-in name '" + std::string(name) + "'",
                     1, prefix.size() + 1);
  }
  return value;
}

Pattern parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what(), text,
               e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array()) {
    parse_fail("JSON pattern needs an \"edges\" array", text, 0);
  }
  std::vector<Edge> edges;
  int max_vertex = -1;
  std::set<Edge> seen;
  std::size_t index = 0;
  for (const auto& item : doc["edges"]) {
    const std::string where = "edge #" + std::to_string(index++);
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      parse_fail(where + " must be a pair of integers", text, 0);
    }
    const auto a = item[0].get<std::int64_t>();
    const auto b = item[1].get<std::int64_t>();
    if (a < 0 || b < 0) parse_fail(where + " has a negative endpoint", text, 0);
    if (a >= kMaxPatternVertices || b >= kMaxPatternVertices) {
      parse_fail(where + " exceeds the vertex limit", text, 0);
    }
    if (a == b) parse_fail(where + " is a self-loop", text, 0);
    const Edge e(static_cast<Vertex>(a), static_cast<Vertex>(b));
    if (!seen.insert(e).second) parse_fail(where + " is a duplicate", text, 0);
    edges.push_back(e);
    max_vertex = std::max<int>(max_vertex, static_cast<int>(e.v));
  }
  int k = max_vertex + 1;
  if (doc.contains("k")) {
    if (!doc["k"].is_number_integer()) parse_fail("\"k\" must be an integer", text, 0);
    k = doc["k"].get<int>();
    if (k <= max_vertex) parse_fail("\"k\" is smaller than an edge endpoint", text, 0);
  }
  if (k > kMaxPatternVertices) parse_fail("more than 12 vertices", text, 0);
  if (static_cast<int>(edges.size()) > kMaxPatternEdges) {
    parse_fail("more than 20 edges", text, 0);
  }
  const std::string name = doc.value("name", std::string{});
  return make_pattern(k, std::move(edges), name);
}

Pattern parse_edge_text(std::string_view text) {
  std::vector<Edge> edges;
  std::set<Edge> seen;
  int max_vertex = -1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find_first_of(",;\n", pos);
    const std::size_t stop = end == std::string_view::npos ? text.size() : end;
    // Tokenize one "u v" group.
    std::vector<std::pair<std::int64_t, std::size_t>> numbers;
    std::size_t i = pos;
    while (i < stop) {
      const char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        parse_fail(std::string("unexpected character '") + c + "'", text, i);
      }
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + stop, value);
      if (ec != std::errc()) parse_fail("number out of range", text, i);
      numbers.emplace_back(value, i);
      i = static_cast<std::size_t>(ptr - text.data());
    }
    if (!numbers.empty()) {
      if (numbers.size() != 2) parse_fail("expected an edge \"u v\"", text, pos);
      const auto [a, a_pos] = numbers[0];
      const auto [b, b_pos] = numbers[1];
      if (a >= kMaxPatternVertices) parse_fail("more than 12 vertices", text, a_pos);
      if (b >= kMaxPatternVertices) parse_fail("more than 12 vertices", text, b_pos);
      if (a == b) parse_fail("self-loop", text, a_pos);
      const Edge e(static_cast<Vertex>(a), static_cast<Vertex>(b));
      if (!seen.insert(e).second) parse_fail("duplicate edge", text, a_pos);
      edges.push_back(e);
      if (static_cast<int>(edges.size()) > kMaxPatternEdges) {
        parse_fail("more than 20 edges", text, a_pos);
      }
      max_vertex = std::max<int>(max_vertex, static_cast<int>(e.v));
    }
    pos = stop + 1;
  }
  if (edges.empty()) parse_fail("no edges", text, 0);
  return make_pattern(max_vertex + 1, std::move(edges));
}

}  // namespace

Pattern make_pattern(int k, std::vector<Edge> edges, std::string name) {
  if (k < 0 || k > kMaxPatternVertices) {
    throw std::invalid_argument("pattern: vertex count must be in [0, 12]");
  }
  if (static_cast<int>(edges.size()) > kMaxPatternEdges) {
    throw std::invalid_argument("pattern: more than 20 edges");
  }
  // Validates endpoints, loops and duplicates.
  (void)Graph::from_edges(static_cast<std::size_t>(k), edges);

  Pattern p;
  p.name = std::move(name);
  p.k = k;
  p.edges = std::move(edges);
  std::sort(p.edges.begin(), p.edges.end());

  const auto comps = component_masks(p);
  p.component_count = static_cast<int>(comps.size());
  const auto deg = degrees(p);
  p.has_isolated = std::any_of(deg.begin(), deg.end(), [](int d) { return d == 0; });
  for (const auto& odd : component_odd_counts(p)) p.theta = std::max(p.theta, odd);
  if (!p.edges.empty()) {
    p.m0 = max_density(p);
    p.rho = trail_decomposition(p).part_count;
  }
  p.aut_count = automorphism_count(p);
  if (p.name.empty()) {
    nlohmann::json j;
    j["k"] = k;
    j["edges"] = nlohmann::json::array();
    for (const Edge& e : p.edges) j["edges"].push_back({e.u, e.v});
    p.name = j.dump();
  }
  return p;
}

Pattern builtin_pattern(std::string_view name) {
  std::vector<Edge> edges;
  auto has_prefix = [&](std::string_view prefix) {
    return name.substr(0, prefix.size()) == prefix && name.size() > prefix.size();
  };
  const std::string label(name);
  if (name == "triangle") return make_pattern(3, {{0, 1}, {1, 2}, {0, 2}}, label);
  if (name == "edge") return make_pattern(2, {{0, 1}}, label);
  if (has_prefix("path-")) {
    const int len = parse_suffix(name, "path-");
    if (len < 1 || len > kMaxPatternVertices - 1) {
      throw ParseError("pattern: path length must be in [1, 11]", 1, 6);
    }
    for (int i = 0; i < len; ++i) edges.emplace_back(i, i + 1);
    return make_pattern(len + 1, std::move(edges), label);
  }
  if (has_prefix("star-")) {
    const int leaves = parse_suffix(name, "star-");
    if (leaves < 1 || leaves > kMaxPatternVertices - 1) {
      throw ParseError("pattern: star size must be in [1, 11]", 1, 6);
    }
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return make_pattern(leaves + 1, std::move(edges), label);
  }
  if (has_prefix("cycle-")) {
    const int len = parse_suffix(name, "cycle-");
    if (len < 3 || len > kMaxPatternVertices) {
      throw ParseError("pattern: cycle length must be in [3, 12]", 1, 7);
    }
    for (int i = 0; i < len; ++i) edges.emplace_back(i, (i + 1) % len);
    return make_pattern(len, std::move(edges), label);
  }
  if (has_prefix("K-")) {
    const int r = parse_suffix(name, "K-");
    if (r < 2 || r > 6) throw ParseError("pattern: K-r needs r in [2, 6]", 1, 3);
    for (int a = 0; a < r; ++a) {
      for (int b = a + 1; b < r; ++b) edges.emplace_back(a, b);
    }
    return make_pattern(r, std::move(edges), label);
  }
  throw ParseError("pattern: unknown built-in '" + label + "'", 1, 1);
}

Pattern parse_pattern(std::string_view spec) {
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("pattern: empty spec", 1, 1);
  const auto last = spec.find_last_not_of(" \t\r\n");
  const std::string_view body = spec.substr(first, last - first + 1);
  if (body.front() == '{') return parse_json(body);
  if (std::isalpha(static_cast<unsigned char>(body.front()))) {
    return builtin_pattern(body);
  }
  return parse_edge_text(body);
}

Rational max_density(const Pattern& p) {
  if (p.edges.empty()) {
    throw std::invalid_argument("max_density: pattern has no edges");
  }
  const Masks adj = adjacency_masks(p);
  Rational best(0);
  const std::uint32_t full = (1u << p.k) - 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::int64_t twice_edges = 0;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      twice_edges += std::popcount(adj[static_cast<std::size_t>(std::countr_zero(rest))] & s);
    }
    const Rational density(twice_edges / 2, std::popcount(s));
    if (density > best) best = density;
  }
  return best;
}

std::vector<int> component_odd_counts(const Pattern& p) {
  const auto deg = degrees(p);
  std::vector<int> out;
  for (std::uint32_t comp : component_masks(p)) {
    int odd = 0;
    int edge_ends = 0;
    for (std::uint32_t c = comp; c; c &= c - 1) {
      const int v = std::countr_zero(c);
      edge_ends += deg[static_cast<std::size_t>(v)];
      odd += deg[static_cast<std::size_t>(v)] % 2;
    }
    if (edge_ends > 0) out.push_back(odd);
  }
  return out;
}

std::vector<Pattern> pattern_components(const Pattern& p) {
  std::vector<Pattern> out;
  for (std::uint32_t comp : component_masks(p)) {
    std::vector<int> relabel(static_cast<std::size_t>(p.k), -1);
    int next = 0;
    for (std::uint32_t c = comp; c; c &= c - 1) relabel[static_cast<std::size_t>(std::countr_zero(c))] = next++;
    std::vector<Edge> edges;
    for (const Edge& e : p.edges) {
      if (comp & (1u << e.u)) {
        edges.emplace_back(static_cast<Vertex>(relabel[e.u]), static_cast<Vertex>(relabel[e.v]));
      }
    }
    out.push_back(make_pattern(next, std::move(edges)));
  }
  return out;
}

std::uint64_t automorphism_count(const Pattern& p) {
  if (p.k == 0) return 1;
  const Masks adj = adjacency_masks(p);
  const auto deg = degrees(p);
  std::vector<int> image(static_cast<std::size_t>(p.k), -1);
  std::uint64_t count = 0;
  automorphism_extend(adj, deg, image, 0, 0, count);
  return count;
}

std::string_view to_string(BaseModel b) {
  switch (b) {
    case BaseModel::complete: return "complete";
    case BaseModel::gnp: return "gnp";
    case BaseModel::gnm: return "gnm";
  }
  return "?";
}

std::string_view to_string(ThresholdFormula f) {
  switch (f) {
    case ThresholdFormula::cyclic_gnp: return "cyclic_gnp";
    case ThresholdFormula::tree_complete: return "tree_complete";
    case ThresholdFormula::forest_complete: return "forest_complete";
    case ThresholdFormula::path_constant: return "path_constant";
  }
  return "?";
}

BaseModel parse_base_model(std::string_view s) {
  if (s == "complete") return BaseModel::complete;
  if (s == "gnp") return BaseModel::gnp;
  if (s == "gnm") return BaseModel::gnm;
  throw std::invalid_argument("unknown base model '" + std::string(s) + "'");
}

ThresholdPrediction predicted_threshold(const Pattern& p, BaseModel base) {
  if (p.edges.empty()) {
    throw std::invalid_argument("predicted_threshold: pattern has no edges");
  }
  ThresholdPrediction pred;
  pred.base = base;
  const bool cyclic = p.m0 >= Rational(1);
  if (cyclic) {
    pred.formula = ThresholdFormula::cyclic_gnp;
    pred.exponent = Rational(2) - Rational(1) / p.m0;
    if (base == BaseModel::complete) pred.reason = "complete graph taken as p = 1";
  } else if (base == BaseModel::complete) {
    const auto edge_components = component_odd_counts(p).size();
    if (p.theta == 2) {
      pred.formula = ThresholdFormula::path_constant;
    } else if (edge_components == 1 && !p.has_isolated) {
      pred.formula = ThresholdFormula::tree_complete;
    } else {
      pred.formula = ThresholdFormula::forest_complete;
    }
    pred.exponent = Rational(1) - Rational(2, p.theta);
  } else {
    pred.formula = p.component_count == 1 ? ThresholdFormula::tree_complete
                                          : ThresholdFormula::forest_complete;
    pred.applicable = false;
    pred.reason = "forest threshold over random base graphs is an open problem";
  }
  if (p.has_isolated) {
    if (!pred.reason.empty()) pred.reason += "; ";
    pred.reason += "isolated pattern vertices also need enough vertices in the host";
  }
  return pred;
}

}  // namespace tracelab
