#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/pattern.hpp"

namespace tracelab {

struct ExperimentConfig {
  BaseModel base = BaseModel::complete;
  std::vector<std::size_t> n_list;
  double p = 1.0;           // gnp edge probability
  std::uint64_t m = 0;      // gnm edge count
  std::string pattern = "triangle";
  std::vector<std::size_t> t_list;
  std::size_t trials = 100;
  std::uint64_t master_seed = 1;
  double buffer_c = 3.0;
  unsigned workers = 1;
  bool quenched = false;    // one base graph per n shared by all trials
  double rel_tol = 0.02;    // half-time search bracket tolerance

  // Throws std::invalid_argument if the config cannot be run for pattern p.
  void validate(const Pattern& p) const;
};

// Parses the TOML subset used by experiment files (flat key = value pairs,
// strings, numbers, booleans and arrays). Throws ParseError.
ExperimentConfig parse_experiment_config(const std::string& toml_text);
ExperimentConfig load_experiment_config(const std::string& path);

// TRACELAB_THREADS, when set to a positive integer, replaces cfg.workers.
void apply_environment(ExperimentConfig& cfg);

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval; z defaults to the two-sided 95% quantile.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959963984540054);

struct ProbEstimate {
  BaseModel base = BaseModel::complete;
  std::size_t n = 0;
  double p = 1.0;  // edge density of the base model
  std::size_t t = 0;
  std::string pattern;
  std::uint64_t master_seed = 0;
  bool quenched = false;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::string error;  // set when the point could not be evaluated
};

// Runs parallel Monte Carlo trials for one (config, n) point. Trial i draws
// from a generator seeded by hash(master_seed, point key, i); the key leaves
// out t, so evaluations at different t reuse the same walks and p_hat is
// non-decreasing in t.
class PointRunner {
 public:
  PointRunner(const ExperimentConfig& cfg, Pattern pattern, std::size_t n);

  ProbEstimate estimate(std::size_t t) const;
  bool trial(std::size_t t, std::uint64_t index) const;

  const Pattern& pattern() const { return pattern_; }
  std::size_t n() const { return n_; }

 private:
  ExperimentConfig cfg_;
  Pattern pattern_;
  std::size_t n_;
  std::uint64_t key_hash_;
  std::optional<Graph> fixed_graph_;
};

ProbEstimate estimate_probability(const ExperimentConfig& cfg, const Pattern& p,
                                  std::size_t n, std::size_t t);

struct HalfTime {
  std::size_t n = 0;
  std::size_t t_half = 0;  // evaluated t with p_hat closest to 1/2
  std::size_t t_low = 0;   // p_hat(t_low) < 1/2
  std::size_t t_high = 0;  // p_hat(t_high) >= 1/2
  double p_low = 0.0;
  double p_high = 1.0;
  std::vector<ProbEstimate> evaluations;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t low, std::size_t high)
      : std::runtime_error(what), low_(low), high_(high) {}
  std::size_t low() const { return low_; }
  std::size_t high() const { return high_; }

 private:
  std::size_t low_;
  std::size_t high_;
};

// Exponential bracketing, then bisection on t until the bracket is no wider
// than max(1, rel_tol * t_high).
HalfTime find_half_time(const PointRunner& runner, double rel_tol,
                        std::size_t max_iterations = 64);
HalfTime find_half_time(const ExperimentConfig& cfg, std::size_t n, double rel_tol);

struct ThresholdFit {
  std::vector<std::pair<double, double>> points;  // (n, t_half)
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};

// Least squares of log t_half on log n. Needs at least 3 points and two
// distinct n.
ThresholdFit fit_threshold_exponent(const std::vector<std::pair<double, double>>& points);

// One estimate per (n, t), sorted by n then t. Point failures are recorded
// in the row's error field and the sweep continues.
std::vector<ProbEstimate> sweep(const ExperimentConfig& cfg);

void write_sweep_csv(std::ostream& out, const std::vector<ProbEstimate>& rows);
void write_halftime_csv(std::ostream& out, const std::vector<HalfTime>& rows);
// Reads (n, t_half) pairs from a CSV with a header naming both columns.
std::vector<std::pair<double, double>> read_halftime_csv(std::istream& in);

// Runs body(i) for i in [0, count) over `workers` threads. The first
// exception thrown by any call is rethrown.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace tracelab
