#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "helpers.hpp"
#include "tracelab/walk.hpp"

using namespace tracelab;

namespace {

WalkRecord record(std::size_t n, std::vector<Vertex> steps) {
  WalkRecord w;
  w.n = n;
  w.steps = std::move(steps);
  return w;
}

}  // namespace

TEST_CASE("lazy walk on K_10 gives uniform i.i.d. pairs") {
  // Chi-square over the 100 ordered pairs (X_{i-1}, X_i). 0.999 quantile of
  // chi-square with 99 degrees of freedom.
  constexpr double kCritical = 148.2304;
  const CompleteGraph host(10);
  Rng rng(424242);
  const std::size_t t = 1'000'000;
  std::vector<double> cells(100, 0.0);
  Vertex prev = 0;
  walk_steps(host, t, rng, [&](std::size_t i, Vertex v) {
    if (i > 0) cells[prev * 10 + v] += 1.0;
    prev = v;
  });
  const double expected = t / 100.0;
  double chi2 = 0.0;
  for (double c : cells) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < kCritical);
}

TEST_CASE("walk edge cases") {
  Rng rng(1);
  const WalkRecord zero = run_walk(complete_graph(5), 0, rng);
  CHECK(zero.steps.size() == 1);
  CHECK(zero.length() == 0);
  CHECK(trace(zero).num_edges() == 0);

  const WalkRecord lonely = run_walk(Graph(1), 20, rng);
  CHECK(std::all_of(lonely.steps.begin(), lonely.steps.end(), [](Vertex v) { return v == 0; }));
  CHECK(lonely.lazy_steps() == 20);

  CHECK_THROWS_AS(run_walk(Graph(0), 3, rng), std::invalid_argument);
}

TEST_CASE("walks stay on host edges") {
  Rng rng(8);
  const Graph g = tracelab::testing::random_small_graph(30, 0.15, rng);
  const WalkRecord w = run_walk(g, 5000, rng);
  for (std::size_t i = 1; i < w.steps.size(); ++i) {
    const Vertex a = w.steps[i - 1];
    const Vertex b = w.steps[i];
    REQUIRE((a == b || g.has_edge(a, b)));
  }
}

TEST_CASE("trace") {
  const WalkRecord w = record(5, {0, 1, 1, 2, 1, 0, 3});
  const Graph tr = trace(w);
  CHECK(tr.num_vertices() == 5);
  CHECK(tr.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}});
  CHECK(trace(w, 2).edges() == std::vector<Edge>{{0, 1}});
  CHECK(trace(w, 0).num_edges() == 0);
  CHECK_THROWS_AS(trace(w, 7), std::out_of_range);

  const auto compact = compact_trace(w.steps);
  CHECK(compact.graph.num_vertices() == 4);
  CHECK(compact.graph.num_edges() == 3);
  for (const Edge& e : compact.graph.edges()) {
    CHECK(tr.has_edge(compact.labels[e.u], compact.labels[e.v]));
  }
}

TEST_CASE("trace grows with t") {
  Rng rng(12);
  const WalkRecord w = run_walk(complete_graph(12), 300, rng);
  std::size_t prev = 0;
  for (std::size_t t = 0; t <= 300; t += 10) {
    const auto edges = trace(w, t).edges();
    REQUIRE(edges.size() >= prev);
    if (t >= 10) {
      const auto earlier = trace(w, t - 10).edges();
      REQUIRE(std::includes(edges.begin(), edges.end(), earlier.begin(), earlier.end()));
    }
    prev = edges.size();
  }
}

TEST_CASE("same seed, same walk; longer walks extend shorter ones") {
  Rng a(77);
  Rng b(77);
  const WalkRecord short_walk = run_walk(CompleteGraph(1000), 100, a);
  const WalkRecord long_walk = run_walk(CompleteGraph(1000), 500, b);
  CHECK(std::equal(short_walk.steps.begin(), short_walk.steps.end(), long_walk.steps.begin()));
}

TEST_CASE("edge multiplicities and exit counts") {
  const WalkRecord w = record(3, {0, 1, 0, 1, 1});
  const auto mult = edge_multiplicities(w);
  REQUIRE(mult.counts.size() == 1);
  CHECK(mult.counts[0].first == Edge(0, 1));
  CHECK(mult.counts[0].second == 3);
  CHECK(mult.max == 3);
  const auto exits = exit_counts(w);
  CHECK(exits == std::vector<std::uint64_t>{2, 1, 0});
  CHECK(w.lazy_steps() == 1);

  const WalkRecord uvuv = record(2, {0, 1, 0, 1});
  CHECK(exit_counts(uvuv) == std::vector<std::uint64_t>{2, 1});
}

TEST_CASE("lazy steps on K_n occur with frequency 1/n") {
  Rng rng(5150);
  const std::size_t n = 20;
  const std::size_t t = 200'000;
  const WalkRecord w = run_walk(CompleteGraph(n), t, rng);
  const double freq = static_cast<double>(w.lazy_steps()) / t;
  const double sigma = std::sqrt((1.0 / n) * (1.0 - 1.0 / n) / t);
  CHECK(std::abs(freq - 1.0 / n) < 3.0 * sigma);
}

TEST_CASE("time sets") {
  const TimeSet w = make_time_set({3, 4, 5, 9}, 2);
  CHECK(w.w == 4);
  CHECK(w.r == 2);
  CHECK(w.q == 1);

  const TimeSet far = make_time_set({3, 4, 5, 20}, 2);
  CHECK(far.r == 2);
  CHECK(far.q == 0);

  const TimeSet unsorted = make_time_set({9, 3, 5, 4, 4}, 2);
  CHECK(unsorted.times == std::vector<std::size_t>{3, 4, 5, 9});

  const TimeSet empty = make_time_set({}, 3);
  CHECK(empty.r == 0);
  CHECK(empty.q == 0);

  CHECK(buffer_length(1) == 1);
  CHECK(buffer_length(100) == static_cast<std::size_t>(std::ceil(3.0 * std::log(100.0))));
  CHECK(buffer_length(100, 1.0) == 5);
}

TEST_CASE("hit_times") {
  const Graph k4 = complete_graph(4);
  const WalkRecord w = record(4, {0, 1, 1, 2, 1, 0, 3});
  const std::vector<Edge> embedded{{0, 1}};
  const TimeSet hits = hit_times(k4, w, embedded, 1);
  CHECK(hits.times == std::vector<std::size_t>{1, 5});
  CHECK(hits.r == 2);

  const std::vector<Edge> path{{0, 1}, {1, 2}};
  CHECK(hit_times(k4, w, path, 1).times == std::vector<std::size_t>{1, 3, 4, 5});

  const Graph p3 = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  const std::vector<Edge> missing{{0, 2}};
  CHECK_THROWS_AS(hit_times(p3, record(3, {0, 1}), missing, 1), std::invalid_argument);
}

TEST_CASE("streaming statistics agree with the stored walk") {
  Rng rng(99);
  const Graph g = tracelab::testing::random_small_graph(25, 0.2, rng);
  const WalkRecord w = run_walk(g, 4000, rng);
  StreamingWalkStats stats(g.num_vertices());
  for (std::size_t i = 0; i < w.steps.size(); ++i) stats.observe(i, w.steps[i]);
  CHECK(stats.length() == w.length());
  CHECK(stats.lazy_steps() == w.lazy_steps());
  CHECK(stats.exit_counts() == exit_counts(w));
  CHECK(stats.trace_edges() == trace(w).edges());
  CHECK(stats.trace_edge_count() == trace(w).num_edges());
  CHECK(stats.max_multiplicity() == edge_multiplicities(w).max);
}
