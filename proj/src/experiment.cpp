#include "tracelab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "tracelab/errors.hpp"
#include "tracelab/rng.hpp"
#include "tracelab/subgraph.hpp"
#include "tracelab/walk.hpp"

namespace tracelab {

namespace {

std::string format_double(double x, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

double edge_density(const ExperimentConfig& cfg, std::size_t n) {
  switch (cfg.base) {
    case BaseModel::complete: return 1.0;
    case BaseModel::gnp: return cfg.p;
    case BaseModel::gnm: {
      const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
      return pairs > 0 ? static_cast<double>(cfg.m) / pairs : 0.0;
    }
  }
  return 0.0;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Checks that depend on n; PointRunner repeats them so a sweep can record a
// bad n as a failed row.
void check_point(const ExperimentConfig& cfg, const Pattern& pat, std::size_t n) {
  if (n < static_cast<std::size_t>(pat.k)) {
    throw std::invalid_argument("config: n=" + std::to_string(n) +
                                " is smaller than the pattern's " + std::to_string(pat.k) +
                                " vertices");
  }
  if (cfg.base == BaseModel::gnm && cfg.m > std::uint64_t{n} * (n - 1) / 2) {
    throw std::invalid_argument("config: m exceeds n(n-1)/2 for n=" + std::to_string(n));
  }
}

void check_global(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (cfg.n_list.empty()) throw std::invalid_argument("config: n list is empty");
  if (cfg.base == BaseModel::gnp && !(cfg.p >= 0.0 && cfg.p <= 1.0)) {
    throw std::invalid_argument("config: p must lie in [0, 1]");
  }
  if (!(cfg.rel_tol > 0.0)) throw std::invalid_argument("config: rel_tol must be positive");
}

}  // namespace

void ExperimentConfig::validate(const Pattern& pat) const {
  check_global(*this);
  for (std::size_t n : n_list) check_point(*this, pat, n);
}

void apply_environment(ExperimentConfig& cfg) {
  if (const char* env = std::getenv("TRACELAB_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) cfg.workers = static_cast<unsigned>(value);
  }
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double centre = (ph + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / nt + z2 / (4.0 * nt * nt)) / denom;
  // Clamp rounding so that low <= p_hat <= high always holds.
  return {std::clamp(std::min(centre - half, ph), 0.0, 1.0),
          std::clamp(std::max(centre + half, ph), 0.0, 1.0)};
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  pool.reserve(spawn);
  for (unsigned w = 0; w < spawn; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

PointRunner::PointRunner(const ExperimentConfig& cfg, Pattern pattern, std::size_t n)
    : cfg_(cfg), pattern_(std::move(pattern)), n_(n) {
  if (n_ == 0) throw std::invalid_argument("point: n must be positive");
  check_point(cfg_, pattern_, n_);
  std::ostringstream key;
  key << to_string(cfg_.base) << '|' << n_ << '|' << format_double(cfg_.p, "%.17g") << '|'
      << cfg_.m << '|' << pattern_.name << '|' << (cfg_.quenched ? "quenched" : "annealed");
  key_hash_ = hash_string(key.str());
  if (cfg_.quenched && cfg_.base != BaseModel::complete) {
    Rng rng(derive_seed(cfg_.master_seed, key_hash_, ~std::uint64_t{0}));
    fixed_graph_ = cfg_.base == BaseModel::gnp ? sample_gnp(n_, cfg_.p, rng)
                                               : sample_gnm(n_, cfg_.m, rng);
  }
}

bool PointRunner::trial(std::size_t t, std::uint64_t index) const {
  Rng rng(derive_seed(cfg_.master_seed, key_hash_, index));
  std::vector<Vertex> steps;
  steps.reserve(t + 1);
  auto record = [&](std::size_t, Vertex v) { steps.push_back(v); };
  if (cfg_.base == BaseModel::complete) {
    walk_steps(CompleteGraph(n_), t, rng, record);
  } else if (fixed_graph_) {
    walk_steps(*fixed_graph_, t, rng, record);
  } else {
    const Graph g = cfg_.base == BaseModel::gnp ? sample_gnp(n_, cfg_.p, rng)
                                                : sample_gnm(n_, cfg_.m, rng);
    walk_steps(g, t, rng, record);
  }
  return trace_contains(steps, n_, pattern_);
}

ProbEstimate PointRunner::estimate(std::size_t t) const {
  ProbEstimate est;
  est.base = cfg_.base;
  est.n = n_;
  est.p = edge_density(cfg_, n_);
  est.t = t;
  est.pattern = pattern_.name;
  est.master_seed = cfg_.master_seed;
  est.quenched = cfg_.quenched;
  est.trials = cfg_.trials;

  std::vector<char> hits(cfg_.trials, 0);
  parallel_for(cfg_.trials, cfg_.workers,
               [&](std::size_t i) { hits[i] = trial(t, i) ? 1 : 0; });
  est.successes = static_cast<std::uint64_t>(std::count(hits.begin(), hits.end(), 1));
  est.p_hat = static_cast<double>(est.successes) / static_cast<double>(est.trials);
  const auto ci = wilson_interval(est.successes, est.trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

ProbEstimate estimate_probability(const ExperimentConfig& cfg, const Pattern& p,
                                  std::size_t n, std::size_t t) {
  cfg.validate(p);
  return PointRunner(cfg, p, n).estimate(t);
}

HalfTime find_half_time(const PointRunner& runner, double rel_tol,
                        std::size_t max_iterations) {
  HalfTime result;
  result.n = runner.n();
  auto evaluate = [&](std::size_t t) {
    result.evaluations.push_back(runner.estimate(t));
    return result.evaluations.back().p_hat;
  };

  std::size_t low = 0;
  double p_low = evaluate(0);
  if (p_low >= 0.5) {
    throw ConvergenceError("half time: pattern present at t = 0", 0, 0);
  }
  std::size_t high = 1;
  double p_high = evaluate(high);
  std::size_t iterations = 0;
  while (p_high < 0.5) {
    if (++iterations > max_iterations) {
      throw ConvergenceError("half time: bracketing did not reach p >= 1/2 by t=" +
                                 std::to_string(high),
                             low, high);
    }
    low = high;
    p_low = p_high;
    high *= 2;
    p_high = evaluate(high);
  }
  while (high - low > std::max<double>(1.0, rel_tol * static_cast<double>(high))) {
    if (++iterations > max_iterations) {
      throw ConvergenceError("half time: bisection did not converge", low, high);
    }
    const std::size_t mid = low + (high - low) / 2;
    const double p_mid = evaluate(mid);
    if (p_mid >= 0.5) {
      high = mid;
      p_high = p_mid;
    } else {
      low = mid;
      p_low = p_mid;
    }
  }
  result.t_low = low;
  result.t_high = high;
  result.p_low = p_low;
  result.p_high = p_high;
  result.t_half = std::abs(p_low - 0.5) < std::abs(p_high - 0.5) ? low : high;
  return result;
}

HalfTime find_half_time(const ExperimentConfig& cfg, std::size_t n, double rel_tol) {
  const Pattern p = parse_pattern(cfg.pattern);
  cfg.validate(p);
  return find_half_time(PointRunner(cfg, p, n), rel_tol);
}

ThresholdFit fit_threshold_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    throw std::invalid_argument("fit: need at least 3 points");
  }
  ThresholdFit fit;
  fit.points = points;
  const double count = static_cast<double>(points.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [n, t] : points) {
    if (!(n > 0.0) || !(t > 0.0)) {
      throw std::invalid_argument("fit: n and t_half must be positive");
    }
    mean_x += std::log(n);
    mean_y += std::log(t);
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [n, t] : points) {
    const double dx = std::log(n) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(t) - mean_y);
  }
  if (sxx <= 0.0) throw std::invalid_argument("fit: all n are equal");
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ssr = 0.0;
  for (const auto& [n, t] : points) {
    const double resid = std::log(t) - (fit.intercept + fit.slope * std::log(n));
    ssr += resid * resid;
  }
  fit.stderr_slope = std::sqrt(ssr / (count - 2.0) / sxx);
  return fit;
}

std::vector<ProbEstimate> sweep(const ExperimentConfig& cfg) {
  const Pattern pattern = parse_pattern(cfg.pattern);
  check_global(cfg);
  std::vector<std::size_t> ns = cfg.n_list;
  std::vector<std::size_t> ts = cfg.t_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<ProbEstimate> rows;
  for (std::size_t n : ns) {
    std::optional<PointRunner> runner;
    std::string setup_error;
    try {
      runner.emplace(cfg, pattern, n);
    } catch (const std::exception& e) {
      setup_error = e.what();
    }
    for (std::size_t t : ts) {
      if (runner) {
        try {
          rows.push_back(runner->estimate(t));
          continue;
        } catch (const std::exception& e) {
          setup_error = e.what();
        }
      }
      ProbEstimate failed;
      failed.base = cfg.base;
      failed.n = n;
      failed.p = edge_density(cfg, n);
      failed.t = t;
      failed.pattern = pattern.name;
      failed.master_seed = cfg.master_seed;
      failed.quenched = cfg.quenched;
      failed.trials = cfg.trials;
      failed.p_hat = failed.ci_low = failed.ci_high = std::nan("");
      failed.error = setup_error;
      rows.push_back(std::move(failed));
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<ProbEstimate>& rows) {
  out << "base,n,p,t,pattern,trials,successes,p_hat,ci_low,ci_high,master_seed,mode\n";
  for (const auto& r : rows) {
    out << to_string(r.base) << ',' << r.n << ',' << format_double(r.p, "%.6g") << ','
        << r.t << ',' << csv_field(r.pattern) << ',' << r.trials << ',' << r.successes
        << ',' << format_double(r.p_hat, "%.6f") << ',' << format_double(r.ci_low, "%.6f")
        << ',' << format_double(r.ci_high, "%.6f") << ',' << r.master_seed << ','
        << (r.quenched ? "quenched" : "annealed") << '\n';
  }
}

void write_halftime_csv(std::ostream& out, const std::vector<HalfTime>& rows) {
  out << "n,t_half,t_low,t_high,p_low,p_high,evaluations\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.t_half << ',' << r.t_low << ',' << r.t_high << ','
        << format_double(r.p_low, "%.6f") << ',' << format_double(r.p_high, "%.6f") << ','
        << r.evaluations.size() << '\n';
  }
}

std::vector<std::pair<double, double>> read_halftime_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("halftime csv: empty input", 1, 1);
  const auto header = split_csv_line(line);
  const auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("halftime csv: missing column " + name, 1, 1);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t n_col = col("n");
  const std::size_t t_col = col("t_half");
  std::vector<std::pair<double, double>> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() <= std::max(n_col, t_col)) {
      throw ParseError("halftime csv: short row", line_no, 1);
    }
    try {
      points.emplace_back(std::stod(fields[n_col]), std::stod(fields[t_col]));
    } catch (const std::exception&) {
      throw ParseError("halftime csv: bad number", line_no, 1);
    }
  }
  return points;
}

}  // namespace tracelab
