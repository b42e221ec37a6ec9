#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "helpers.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/pattern.hpp"

using namespace tracelab;
using tracelab::testing::all_labelled_trees;
using tracelab::testing::random_connected_edges;

namespace {

int odd_count(const Pattern& p) {
  std::vector<int> deg(static_cast<std::size_t>(p.k), 0);
  for (const Edge& e : p.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return static_cast<int>(std::count_if(deg.begin(), deg.end(), [](int d) { return d % 2; }));
}

// Max density over edge subsets (not vertex subsets): an independent route
// to the same maximum.
Rational density_by_edge_subsets(const Pattern& p) {
  Rational best(0);
  const std::uint32_t full = (1u << p.ell()) - 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::set<Vertex> verts;
    int edges = 0;
    for (int i = 0; i < p.ell(); ++i) {
      if (s & (1u << i)) {
        ++edges;
        verts.insert(p.edges[static_cast<std::size_t>(i)].u);
        verts.insert(p.edges[static_cast<std::size_t>(i)].v);
      }
    }
    best = std::max(best, Rational(edges, static_cast<std::int64_t>(verts.size())));
  }
  return best;
}

}  // namespace

TEST_CASE("parse_pattern basics") {
  const Pattern tri = parse_pattern("0 1\n1 2\n0 2");
  CHECK(tri.k == 3);
  CHECK(tri.ell() == 3);
  const Pattern star = parse_pattern("0 1, 0 2, 0 3");
  CHECK(star.k == 4);
  CHECK(star.ell() == 3);
  CHECK(star.rho == 2);
  CHECK(parse_pattern("star-3").edges == star.edges);
}

TEST_CASE("parse_pattern errors carry positions") {
  try {
    parse_pattern("0 1\n0 0");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
  }
  CHECK_THROWS_AS(parse_pattern("0 0"), ParseError);
  CHECK_THROWS_AS(parse_pattern("0 1, 1 0"), ParseError);
  CHECK_THROWS_AS(parse_pattern("0 1 2"), ParseError);
  CHECK_THROWS_AS(parse_pattern("0 12"), ParseError);
  CHECK_THROWS_AS(parse_pattern("0 -1"), ParseError);
  CHECK_THROWS_AS(parse_pattern("hexagon"), ParseError);
  CHECK_THROWS_AS(parse_pattern("path-x"), ParseError);
  CHECK_THROWS_AS(parse_pattern("{\"edges\": [[0, 1], [1, 1]]}"), ParseError);
  CHECK_THROWS_AS(parse_pattern("{\"edges\": [[0, 1]"), ParseError);
  CHECK_THROWS_AS(parse_pattern("   "), ParseError);
  // 21 edges of K_7.
  std::string big;
  for (int a = 0; a < 7; ++a) {
    for (int b = a + 1; b < 7; ++b) big += std::to_string(a) + " " + std::to_string(b) + ",";
  }
  CHECK_THROWS_AS(parse_pattern(big), ParseError);
}

TEST_CASE("JSON patterns allow isolated vertices") {
  const Pattern p = parse_pattern(R"({"k": 5, "edges": [[0, 1], [1, 2], [0, 2]]})");
  CHECK(p.k == 5);
  CHECK(p.has_isolated);
  CHECK(p.component_count == 3);
  CHECK(p.m0 == Rational(1));
  const auto pred = predicted_threshold(p, BaseModel::gnp);
  CHECK(pred.reason.find("isolated") != std::string::npos);
}

TEST_CASE("built-in patterns") {
  CHECK(builtin_pattern("path-5").ell() == 5);
  CHECK(builtin_pattern("path-5").k == 6);
  CHECK(builtin_pattern("cycle-5").rho == 1);
  CHECK(builtin_pattern("K-4").ell() == 6);
  CHECK(builtin_pattern("star-4").theta == 4);
  CHECK(builtin_pattern("edge").ell() == 1);
  CHECK_THROWS_AS(builtin_pattern("cycle-2"), ParseError);
}

TEST_CASE("max_density") {
  CHECK(max_density(builtin_pattern("triangle")) == Rational(1));
  CHECK(max_density(builtin_pattern("K-4")) == Rational(3, 2));
  const Pattern pendant = parse_pattern("0 1, 1 2, 0 2, 2 3");
  CHECK(pendant.ell() == 4);
  CHECK(density_by_edge_subsets(pendant) == Rational(1));
  CHECK(max_density(pendant) == Rational(1));
  CHECK_THROWS_AS(max_density(make_pattern(3, {})), std::invalid_argument);

  SUBCASE("agrees with the edge-subset route and dominates ell/k") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const int k = 2 + static_cast<int>(uniform_upto(rng, 5));
      const int max_edges = std::min(k * (k - 1) / 2, 10);
      const int ell = k - 1 + static_cast<int>(uniform_upto(rng, static_cast<std::uint64_t>(max_edges - (k - 1))));
      const Pattern p = make_pattern(k, random_connected_edges(k, ell, rng));
      REQUIRE(p.m0 == density_by_edge_subsets(p));
      REQUIRE(p.m0 >= Rational(p.ell(), p.k));
      // Monotone under deleting an edge.
      std::vector<Edge> fewer(p.edges.begin() + 1, p.edges.end());
      if (!fewer.empty()) REQUIRE(max_density(make_pattern(k, fewer)) <= p.m0);
    }
  }
}

TEST_CASE("trail_decomposition") {
  const auto path = trail_decomposition(builtin_pattern("path-5"));
  CHECK(path.part_count == 1);
  CHECK(path.trails.front().size() == 6);

  const Pattern star = builtin_pattern("star-3");
  const auto star_trails = trail_decomposition(star);
  CHECK(star_trails.part_count == 2);
  CHECK(is_valid_trail_cover(star, star_trails));

  const Pattern two_edges = parse_pattern("0 1, 2 3");
  CHECK(trail_decomposition(two_edges).part_count == 2);
  CHECK(two_edges.rho == 2);

  const Pattern bowtie = parse_pattern("0 1, 1 2, 0 2, 2 3, 3 4, 2 4");
  const auto tour = trail_decomposition(bowtie);
  CHECK(tour.part_count == 1);
  CHECK(is_valid_trail_cover(bowtie, tour));
  CHECK(tour.trails.front().front() == tour.trails.front().back());

  CHECK_THROWS_AS(trail_decomposition(make_pattern(2, {})), std::invalid_argument);
}

TEST_CASE("trail cover validity checker rejects bad covers") {
  const Pattern tri = builtin_pattern("triangle");
  TrailDecomposition missing{{{0, 1, 2}}, 1};
  CHECK_FALSE(is_valid_trail_cover(tri, missing));
  TrailDecomposition reused{{{0, 1, 2, 0}, {0, 1}}, 2};
  CHECK_FALSE(is_valid_trail_cover(tri, reused));
  TrailDecomposition ok{{{0, 1, 2, 0}}, 1};
  CHECK(is_valid_trail_cover(tri, ok));
}

TEST_CASE("min_trail_cover_bruteforce") {
  CHECK(min_trail_cover_bruteforce(builtin_pattern("triangle")) == 1);
  CHECK(min_trail_cover_bruteforce(builtin_pattern("star-3")) == 2);
  CHECK(min_trail_cover_bruteforce(builtin_pattern("star-6")) == 3);
  CHECK_THROWS_AS(min_trail_cover_bruteforce(builtin_pattern("path-9")), SizeLimitError);

  SUBCASE("every connected graph with at most 6 edges") {
    // All edge subsets of K_5 and of K_6 with at most 6 edges that are
    // connected once isolated vertices are dropped.
    for (int k = 2; k <= 6; ++k) {
      std::vector<Edge> pairs;
      for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
      }
      const std::uint32_t limit = 1u << pairs.size();
      int checked = 0;
      for (std::uint32_t s = 1; s < limit; ++s) {
        if (std::popcount(s) > 6 || std::popcount(s) < k - 1) continue;
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          if (s & (1u << i)) edges.push_back(pairs[i]);
        }
        const Pattern p = make_pattern(k, edges);
        if (p.component_count != 1) continue;
        ++checked;
        const int expected = std::max(odd_count(p) / 2, 1);
        REQUIRE(min_trail_cover_bruteforce(p) == expected);
        REQUIRE(p.rho == expected);
      }
      CHECK(checked > 0);
    }
  }
}

TEST_CASE("non-tree counterexamples to subtree monotonicity") {
  const Pattern s3 = builtin_pattern("star-3");
  CHECK(s3.rho == 2);
  for (const Edge& extra : {Edge(1, 2), Edge(1, 3), Edge(2, 3)}) {
    std::vector<Edge> edges = s3.edges;
    edges.push_back(extra);
    CHECK(make_pattern(4, edges).rho == 1);
  }
  const Pattern p3 = builtin_pattern("path-3");
  CHECK(p3.rho == 1);
  CHECK(make_pattern(4, {{0, 1}, {2, 3}}).rho == 2);
}

TEST_CASE("subtree monotonicity over enumerated trees") {
  for (int k = 2; k <= 7; ++k) {
    for (const auto& tree : all_labelled_trees(k)) {
      // Only trees whose vertex 0 is a leaf or the labelled copies repeat
      // the same shapes; keep the k = 7 run affordable.
      if (k == 7 && std::count_if(tree.begin(), tree.end(),
                                  [](const Edge& e) { return e.u == 0 || e.v == 0; }) != 1) {
        continue;
      }
      const Pattern big = make_pattern(k, tree);
      const std::uint32_t limit = 1u << tree.size();
      for (std::uint32_t s = 1; s < limit; ++s) {
        std::vector<Edge> sub;
        for (std::size_t i = 0; i < tree.size(); ++i) {
          if (s & (1u << i)) sub.push_back(tree[i]);
        }
        const Pattern small = make_pattern(k, sub);
        // Connected subtree: exactly one edge-bearing component.
        if (component_odd_counts(small).size() != 1) continue;
        REQUIRE(small.rho <= big.rho);
      }
    }
  }
}

TEST_CASE("intersecting tree copies satisfy k' - l' - 2 + rho_hat / rho >= 0") {
  const std::vector<std::string> trees{"path-2", "path-3", "path-4", "path-5", "star-3",
                                       "star-4", "star-5"};
  std::vector<Pattern> shapes;
  for (const auto& name : trees) shapes.push_back(builtin_pattern(name));
  shapes.push_back(parse_pattern("0 1, 1 2, 2 3, 1 4"));        // spider, 5 vertices
  shapes.push_back(parse_pattern("0 1, 1 2, 2 3, 1 4, 2 5"));   // double broom
  constexpr Vertex kHost = 8;
  for (const Pattern& tree : shapes) {
    const auto k = static_cast<std::size_t>(tree.k);
    std::vector<Vertex> image(k);
    std::vector<char> used(kHost, 0);
    std::size_t pairs = 0;
    auto rec = [&](auto& self, std::size_t i) -> void {
      if (i == k) {
        // T1 is the identity placement on vertices 0..k-1.
        std::set<Edge> e1(tree.edges.begin(), tree.edges.end());
        std::set<Edge> e2;
        for (const Edge& e : tree.edges) e2.emplace(image[e.u], image[e.v]);
        std::set<Vertex> v1;
        for (Vertex v = 0; v < k; ++v) v1.insert(v);
        int shared_vertices = 0;
        for (Vertex v : image) shared_vertices += v1.count(v) ? 1 : 0;
        if (shared_vertices == 0) return;
        int shared_edges = 0;
        std::set<Edge> all = e1;
        for (const Edge& e : e2) {
          shared_edges += e1.count(e) ? 1 : 0;
          all.insert(e);
        }
        const Pattern both = make_pattern(kHost, {all.begin(), all.end()});
        ++pairs;
        REQUIRE((shared_vertices - shared_edges - 2) * tree.rho + both.rho >= 0);
        return;
      }
      for (Vertex v = 0; v < kHost; ++v) {
        if (used[v]) continue;
        used[v] = 1;
        image[i] = v;
        self(self, i + 1);
        used[v] = 0;
      }
    };
    rec(rec, 0);
    CHECK(pairs > 0);
  }
}

TEST_CASE("automorphism_count") {
  CHECK(automorphism_count(builtin_pattern("triangle")) == 6);
  CHECK(automorphism_count(builtin_pattern("path-2")) == 2);
  CHECK(automorphism_count(builtin_pattern("star-3")) == 6);
  CHECK(automorphism_count(builtin_pattern("cycle-6")) == 12);
  CHECK(automorphism_count(builtin_pattern("K-5")) == 120);
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(uniform_upto(rng, 6));
    const int ell = std::min(k * (k - 1) / 2, k - 1 + static_cast<int>(uniform_upto(rng, 4)));
    const Pattern p = make_pattern(k, random_connected_edges(k, ell, rng));
    std::uint64_t factorial = 1;
    for (int i = 2; i <= k; ++i) factorial *= static_cast<std::uint64_t>(i);
    REQUIRE(factorial % p.aut_count == 0);
  }
}

TEST_CASE("pattern invariants") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Pattern a = make_pattern(5, random_connected_edges(5, 5, rng));
    const Pattern b = make_pattern(4, random_connected_edges(4, 4, rng));
    // Disjoint union of the two.
    std::vector<Edge> edges = a.edges;
    for (const Edge& e : b.edges) edges.emplace_back(e.u + 5, e.v + 5);
    const Pattern both = make_pattern(9, edges);
    REQUIRE(both.rho == a.rho + b.rho);
    REQUIRE(both.theta == std::max(a.theta, b.theta));
    REQUIRE(both.theta % 2 == 0);
    REQUIRE(is_valid_trail_cover(both, trail_decomposition(both)));
    const auto comps = pattern_components(both);
    REQUIRE(comps.size() == 2);
    REQUIRE(comps[0].ell() + comps[1].ell() == both.ell());
  }
  CHECK(builtin_pattern("cycle-4").theta == 0);
}

TEST_CASE("predicted_threshold") {
  const auto tri = predicted_threshold(builtin_pattern("triangle"), BaseModel::gnp);
  CHECK(tri.formula == ThresholdFormula::cyclic_gnp);
  CHECK(tri.exponent == Rational(1));
  CHECK(tri.applicable);

  const auto k4 = predicted_threshold(builtin_pattern("K-4"), BaseModel::gnp);
  CHECK(k4.exponent == Rational(4, 3));

  const auto star = predicted_threshold(builtin_pattern("star-4"), BaseModel::complete);
  CHECK(star.formula == ThresholdFormula::tree_complete);
  CHECK(star.exponent == Rational(1, 2));

  const auto path = predicted_threshold(builtin_pattern("path-3"), BaseModel::complete);
  CHECK(path.formula == ThresholdFormula::path_constant);
  CHECK(path.exponent == Rational(0));

  const auto forest = predicted_threshold(parse_pattern("0 1, 0 2, 0 3, 4 5"), BaseModel::complete);
  CHECK(forest.formula == ThresholdFormula::forest_complete);
  CHECK(forest.exponent == Rational(1, 2));  // theta = max(4, 2)

  const auto open = predicted_threshold(builtin_pattern("star-4"), BaseModel::gnp);
  CHECK_FALSE(open.applicable);
  CHECK(open.reason.find("open problem") != std::string::npos);

  const auto cyc_kn = predicted_threshold(builtin_pattern("triangle"), BaseModel::complete);
  CHECK(cyc_kn.exponent == Rational(1));
  CHECK(cyc_kn.formula == ThresholdFormula::cyclic_gnp);

  CHECK_THROWS_AS(predicted_threshold(make_pattern(2, {}), BaseModel::gnp), std::invalid_argument);
}
