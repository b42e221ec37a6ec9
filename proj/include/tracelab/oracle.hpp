#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "tracelab/graph.hpp"
#include "tracelab/rng.hpp"

namespace tracelab {

using BigInt = boost::multiprecision::cpp_int;
using Distribution = std::vector<double>;

inline constexpr std::size_t kMaxDenseVertices = 2000;

// Lazy-walk transition matrix: entry (u, v) = 1/(d(u)+1) for v in N+(u).
// Throws SizeLimitError above kMaxDenseVertices.
Eigen::MatrixXd transition_matrix(const Graph& g);

// Stationary law of the lazy chain, pi_v = (d(v)+1) / (2|E| + n). Throws
// std::invalid_argument if g is disconnected or has no edges.
Distribution stationary_distribution(const Graph& g);

// d(v) / 2|E|, the stationary law of the non-lazy walk. Agrees with
// stationary_distribution up to o(1) as degrees grow.
Distribution degree_proportional_distribution(const Graph& g);

Distribution uniform_distribution(std::size_t n);
Distribution point_mass(std::size_t n, Vertex v);

// One step of the lazy chain applied to a row vector.
Distribution step_distribution(const Graph& g, const Distribution& mu);

double tv_distance(std::span<const double> a, std::span<const double> b);

// d_TV(start P^s, pi) for s = 0..s_max.
std::vector<double> mixing_profile(const Graph& g, const Distribution& start,
                                   std::size_t s_max);

// max over point-mass starts of d_TV(P^s(v, .), pi), s = 0..s_max, by dense
// matrix powering.
std::vector<double> worst_case_mixing_profile(const Graph& g, std::size_t s_max);

// Default ceiling on n * 2^ell * t for the coverage dynamic programs.
inline constexpr double kDefaultDpBudget = 4e9;
inline constexpr std::size_t kMaxDpEdges = 12;

// Probability, for a walk started uniformly, that every listed host edge is
// traversed by time t. DP over (vertex, mask of covered edges).
double exact_containment_probability(const Graph& g, std::span<const Edge> edges,
                                     std::size_t t, double budget = kDefaultDpBudget);

struct JointCoverage {
  double both = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// P(A and B), P(A), P(B) where A (B) is the event that every edge of
// edges_a (edges_b) is traversed by time t. An empty edge set is the sure
// event.
JointCoverage joint_containment_probability(const Graph& g,
                                            std::span<const Edge> edges_a,
                                            std::span<const Edge> edges_b,
                                            std::size_t t,
                                            double budget = kDefaultDpBudget);

BigInt binomial(std::int64_t n, std::int64_t k);

// |{W in [t] : |W| = w, r(W) = r}| = C(w-1, r-1) C(t-w+1, r).
BigInt count_time_sets_formula(std::int64_t t, std::int64_t w, std::int64_t r);

struct TimeSetCensus {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> by_defects;  // index q
};

// Exhaustive census of W in [t] with |W| = w and r(W) = r, bucketed by the
// number of defective runs for buffer B. Bitmask enumeration for t <= 20,
// run-structure generation up to t = 40 as long as the census stays below
// 5*10^7 sets.
TimeSetCensus enumerate_time_sets(std::int64_t t, std::int64_t w, std::int64_t r,
                                  std::size_t buffer);

// Uniform sample from the sets W in [t] with |W| = w and r(W) = r. Times
// are 1-based.
std::vector<std::size_t> sample_time_set(std::size_t t, std::size_t w, std::size_t r,
                                         Rng& rng);

// Monte Carlo estimate of the fraction of such W with at least one
// defective run.
double defective_fraction(std::size_t t, std::size_t w, std::size_t r,
                          std::size_t buffer, std::size_t samples, Rng& rng);

}  // namespace tracelab
