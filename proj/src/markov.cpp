#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tracelab/errors.hpp"
#include "tracelab/oracle.hpp"

namespace tracelab {

namespace {

void check_dense_size(const Graph& g) {
  if (g.num_vertices() > kMaxDenseVertices) {
    throw SizeLimitError("dense Markov analytics need n <= 2000, got n=" +
                             std::to_string(g.num_vertices()),
                         static_cast<double>(g.num_vertices()));
  }
}

void check_ergodic(const Graph& g) {
  if (g.num_edges() == 0) throw std::invalid_argument("stationary law: graph has no edges");
  if (!is_connected(g)) {
    throw std::invalid_argument("stationary law: graph is disconnected");
  }
}

}  // namespace

Eigen::MatrixXd transition_matrix(const Graph& g) {
  check_dense_size(g);
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    const double w = 1.0 / static_cast<double>(g.degree(u) + 1);
    p(u, u) = w;
    for (Vertex v : g.neighbors(u)) p(u, v) = w;
  }
  return p;
}

Distribution stationary_distribution(const Graph& g) {
  check_ergodic(g);
  const double total = static_cast<double>(2 * g.num_edges() + g.num_vertices());
  Distribution pi(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    pi[v] = static_cast<double>(g.degree(v) + 1) / total;
  }
  return pi;
}

Distribution degree_proportional_distribution(const Graph& g) {
  check_ergodic(g);
  const double total = static_cast<double>(2 * g.num_edges());
  Distribution pi(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    pi[v] = static_cast<double>(g.degree(v)) / total;
  }
  return pi;
}

Distribution uniform_distribution(std::size_t n) {
  return Distribution(n, 1.0 / static_cast<double>(n));
}

Distribution point_mass(std::size_t n, Vertex v) {
  Distribution mu(n, 0.0);
  mu.at(v) = 1.0;
  return mu;
}

Distribution step_distribution(const Graph& g, const Distribution& mu) {
  Distribution next(mu.size(), 0.0);
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (mu[u] == 0.0) continue;
    const double share = mu[u] / static_cast<double>(g.degree(u) + 1);
    next[u] += share;
    for (Vertex v : g.neighbors(u)) next[v] += share;
  }
  return next;
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("tv_distance: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return 0.5 * sum;
}

std::vector<double> mixing_profile(const Graph& g, const Distribution& start,
                                   std::size_t s_max) {
  check_dense_size(g);
  if (start.size() != g.num_vertices()) {
    throw std::invalid_argument("mixing_profile: start has wrong length");
  }
  const Distribution pi = stationary_distribution(g);
  std::vector<double> out;
  out.reserve(s_max + 1);
  Distribution mu = start;
  out.push_back(tv_distance(mu, pi));
  for (std::size_t s = 1; s <= s_max; ++s) {
    mu = step_distribution(g, mu);
    out.push_back(tv_distance(mu, pi));
  }
  return out;
}

std::vector<double> worst_case_mixing_profile(const Graph& g, std::size_t s_max) {
  check_dense_size(g);
  const Distribution pi = stationary_distribution(g);
  const Eigen::MatrixXd p = transition_matrix(g);
  const Eigen::Map<const Eigen::RowVectorXd> pi_row(pi.data(), static_cast<Eigen::Index>(pi.size()));
  auto worst = [&](const Eigen::MatrixXd& power) {
    return 0.5 * (power.rowwise() - pi_row).cwiseAbs().rowwise().sum().maxCoeff();
  };
  std::vector<double> out;
  out.reserve(s_max + 1);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(p.rows(), p.cols());
  out.push_back(worst(power));
  for (std::size_t s = 1; s <= s_max; ++s) {
    power = power * p;
    out.push_back(worst(power));
  }
  return out;
}

}  // namespace tracelab
