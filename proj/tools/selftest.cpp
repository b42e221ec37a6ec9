#include "selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "tracelab/experiment.hpp"
#include "tracelab/oracle.hpp"
#include "tracelab/pattern.hpp"
#include "tracelab/subgraph.hpp"
#include "tracelab/walk.hpp"

namespace tracelab::cli {

namespace {

std::vector<Edge> random_connected(int k, int ell, Rng& rng) {
  std::set<Edge> edges;
  for (int v = 1; v < k; ++v) {
    edges.emplace(static_cast<Vertex>(uniform_upto(rng, static_cast<std::uint64_t>(v - 1))),
                  static_cast<Vertex>(v));
  }
  while (static_cast<int>(edges.size()) < ell) {
    const auto a = static_cast<Vertex>(uniform_upto(rng, static_cast<std::uint64_t>(k - 1)));
    const auto b = static_cast<Vertex>(uniform_upto(rng, static_cast<std::uint64_t>(k - 1)));
    if (a != b) edges.emplace(a, b);
  }
  return {edges.begin(), edges.end()};
}

bool trail_number() {
  Rng rng(1);
  for (int i = 0; i < 300; ++i) {
    const int k = 2 + static_cast<int>(uniform_upto(rng, 5));
    const int max_ell = std::min(7, k * (k - 1) / 2);
    const int ell = k - 1 + static_cast<int>(uniform_upto(rng, static_cast<std::uint64_t>(max_ell - (k - 1))));
    const Pattern p = make_pattern(k, random_connected(k, ell, rng));
    const auto d = trail_decomposition(p);
    if (d.part_count != p.rho || !is_valid_trail_cover(p, d)) return false;
    if (min_trail_cover_bruteforce(p) != p.rho) return false;
  }
  return true;
}

bool density() {
  return max_density(builtin_pattern("triangle")) == Rational(1) &&
         max_density(builtin_pattern("K-4")) == Rational(3, 2) &&
         max_density(builtin_pattern("star-4")) == Rational(4, 5);
}

bool wset_formula() {
  for (std::int64_t t = 1; t <= 10; ++t) {
    for (std::int64_t w = 1; w <= t; ++w) {
      for (std::int64_t r = 1; r <= w; ++r) {
        if (BigInt(enumerate_time_sets(t, w, r, 1).count) != count_time_sets_formula(t, w, r)) {
          return false;
        }
      }
    }
  }
  return true;
}

bool stationary() {
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    const Graph g = sample_gnp(40, 0.3, rng);
    if (!is_connected(g)) continue;
    const auto pi = stationary_distribution(g);
    const auto next = step_distribution(g, pi);
    for (std::size_t v = 0; v < pi.size(); ++v) {
      if (std::abs(next[v] - pi[v]) > 1e-12) return false;
    }
  }
  return true;
}

bool dp_closed_form() {
  const Graph k10 = complete_graph(10);
  const std::vector<Edge> e{{3, 7}};
  return std::abs(exact_containment_probability(k10, e, 1) - 0.02) < 1e-14 &&
         std::abs(exact_containment_probability(k10, e, 2) - (0.04 - 0.002)) < 1e-14;
}

bool correlation() {
  const Graph k6 = complete_graph(6);
  const std::vector<Edge> a{{0, 1}};
  const std::vector<Edge> b{{2, 3}};
  for (std::size_t t = 0; t <= 20; ++t) {
    const auto j = joint_containment_probability(k6, a, b, t);
    if (j.both > j.a * j.b) return false;
  }
  return true;
}

bool walk_prefix() {
  Rng a(3);
  Rng b(3);
  const auto w1 = run_walk(CompleteGraph(500), 50, a);
  const auto w2 = run_walk(CompleteGraph(500), 80, b);
  return std::equal(w1.steps.begin(), w1.steps.end(), w2.steps.begin());
}

bool matcher_counts() {
  return count_embeddings(complete_graph(4), builtin_pattern("triangle")) == 24 &&
         count_copies(complete_graph(5), builtin_pattern("cycle-4")) == 15 &&
         !contains(Graph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}),
                   builtin_pattern("triangle"));
}

bool sweep_determinism() {
  ExperimentConfig cfg;
  cfg.base = BaseModel::gnp;
  cfg.p = 0.3;
  cfg.n_list = {30};
  cfg.t_list = {10, 40};
  cfg.pattern = "triangle";
  cfg.trials = 64;
  std::string first;
  for (unsigned workers : {1u, 3u}) {
    cfg.workers = workers;
    std::ostringstream out;
    write_sweep_csv(out, sweep(cfg));
    if (first.empty()) {
      first = out.str();
    } else if (out.str() != first) {
      return false;
    }
  }
  return true;
}

}  // namespace

int run_selftest(std::ostream& out) {
  const std::vector<std::pair<const char*, std::function<bool()>>> checks{
      {"trail number equals max(odd/2, 1)", trail_number},
      {"maximum density", density},
      {"time-set formula equals enumeration", wset_formula},
      {"stationary law is invariant", stationary},
      {"coverage DP closed forms on K_n", dp_closed_form},
      {"disjoint edges not positively correlated", correlation},
      {"walks extend as prefixes", walk_prefix},
      {"embedding counts", matcher_counts},
      {"sweep independent of workers", sweep_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    bool ok = false;
    std::string error;
    try {
      ok = check();
    } catch (const std::exception& e) {
      error = e.what();
    }
    out << (ok ? "ok   " : "FAIL ") << name;
    if (!error.empty()) out << " (" << error << ")";
    out << '\n';
    failures += ok ? 0 : 1;
  }
  out << (failures == 0 ? "selftest passed" : "selftest FAILED") << '\n';
  return failures;
}

}  // namespace tracelab::cli
