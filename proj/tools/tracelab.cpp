// tracelab: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error, 3 selftest failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "selftest.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/experiment.hpp"
#include "tracelab/graph_io.hpp"
#include "tracelab/oracle.hpp"
#include "tracelab/pattern.hpp"
#include "tracelab/subgraph.hpp"
#include "tracelab/walk.hpp"

using namespace tracelab;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitSelftest = 3;

std::string rational_text(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double rational_value(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("bad " + what + ": '" + text + "'");
  return value;
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("bad " + what + ": '" + text + "'");
  return value;
}

std::vector<std::size_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ",")) {
    if (!item.empty()) out.push_back(parse_number<std::size_t>(item, what));
  }
  if (out.empty()) throw std::invalid_argument("empty " + what + " list");
  return out;
}

// "u v" pairs separated by commas, semicolons or newlines.
std::vector<Edge> parse_edges(const std::string& text) {
  std::vector<Edge> out;
  for (const auto& item : split(text, ",;\n")) {
    std::istringstream in(item);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (item.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!(in >> u >> v) || (in >> extra) || u < 0 || v < 0 || u == v) {
      throw std::invalid_argument("bad edge '" + item + "'");
    }
    out.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return out;
}

json edges_json(const std::vector<Edge>& edges) {
  json arr = json::array();
  for (const Edge& e : edges) arr.push_back({e.u, e.v});
  return arr;
}

// complete:n, gnp:n:p or gnm:n:m.
struct GraphSpec {
  BaseModel model = BaseModel::complete;
  std::size_t n = 0;
  double p = 1.0;
  std::uint64_t m = 0;
};

GraphSpec parse_graph_spec(const std::string& text) {
  const auto parts = split(text, ":");
  GraphSpec spec;
  spec.model = parse_base_model(parts[0]);
  const std::size_t want = spec.model == BaseModel::complete ? 2 : 3;
  if (parts.size() != want) {
    throw std::invalid_argument("graph spec must be complete:n, gnp:n:p or gnm:n:m, got '" + text + "'");
  }
  spec.n = parse_number<std::size_t>(parts[1], "vertex count");
  if (spec.model == BaseModel::gnp) spec.p = parse_real(parts[2], "edge probability");
  if (spec.model == BaseModel::gnm) spec.m = parse_number<std::uint64_t>(parts[2], "edge count");
  return spec;
}

Graph build_graph(const GraphSpec& spec, Rng& rng) {
  switch (spec.model) {
    case BaseModel::complete: return complete_graph(spec.n);
    case BaseModel::gnp: return sample_gnp(spec.n, spec.p, rng);
    case BaseModel::gnm: return sample_gnm(spec.n, spec.m, rng);
  }
  return Graph(0);
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

json analyze(const std::string& spec) {
  const Pattern p = parse_pattern(spec);
  json out;
  out["name"] = p.name;
  out["k"] = p.k;
  out["ell"] = p.ell();
  out["edges"] = edges_json(p.edges);
  if (p.ell() > 0) {
    out["m0"] = rational_text(p.m0);
    out["m0_value"] = rational_value(p.m0);
  } else {
    out["m0"] = nullptr;
  }
  out["rho"] = p.rho;
  out["theta"] = p.theta;
  out["aut_count"] = p.aut_count;
  out["components"] = p.component_count;
  out["is_forest"] = p.is_forest();
  if (p.ell() > 0) {
    json trails = json::array();
    for (const auto& trail : trail_decomposition(p).trails) trails.push_back(trail);
    out["trails"] = trails;
    json thresholds;
    for (BaseModel b : {BaseModel::complete, BaseModel::gnp, BaseModel::gnm}) {
      const auto pred = predicted_threshold(p, b);
      json entry;
      entry["applicable"] = pred.applicable;
      entry["formula"] = std::string(to_string(pred.formula));
      if (pred.applicable) {
        entry["exponent"] = rational_text(pred.exponent);
        entry["exponent_value"] = rational_value(pred.exponent);
      }
      if (!pred.reason.empty()) entry["note"] = pred.reason;
      thresholds[std::string(to_string(b))] = entry;
    }
    out["thresholds"] = thresholds;
  }
  return out;
}

struct WalkOptions {
  std::string graph;
  std::string graph_file;
  std::size_t steps = 0;
  std::uint64_t seed = 1;
  std::string dump;
  std::string pattern;
};

json walk(const WalkOptions& opt) {
  Rng rng(opt.seed);
  std::optional<Graph> graph;
  std::optional<CompleteGraph> implicit;
  std::string label;
  if (!opt.graph_file.empty()) {
    graph = read_edge_list_file(opt.graph_file);
    label = "file:" + opt.graph_file;
  } else {
    const GraphSpec spec = parse_graph_spec(opt.graph);
    label = opt.graph;
    if (spec.model == BaseModel::complete) {
      if (spec.n == 0) throw std::invalid_argument("graph has no vertices");
      implicit.emplace(spec.n);
    } else {
      graph = build_graph(spec, rng);
    }
  }
  const std::size_t n = graph ? graph->num_vertices() : implicit->num_vertices();

  std::optional<std::ofstream> dump;
  if (!opt.dump.empty()) {
    dump.emplace(opt.dump);
    if (!*dump) throw std::runtime_error("cannot open " + opt.dump);
  }
  std::optional<Pattern> pattern;
  if (!opt.pattern.empty()) pattern = parse_pattern(opt.pattern);

  StreamingWalkStats stats(n);
  std::vector<Vertex> kept;  // only needed for the containment check
  auto visit = [&](std::size_t i, Vertex v) {
    stats.observe(i, v);
    if (dump) *dump << v << '\n';
    if (pattern) kept.push_back(v);
  };
  if (graph) {
    walk_steps(*graph, opt.steps, rng, visit);
  } else {
    walk_steps(*implicit, opt.steps, rng, visit);
  }
  if (dump && !*dump) throw std::runtime_error("failed writing " + opt.dump);

  const auto& exits = stats.exit_counts();
  json out;
  out["graph"] = label;
  out["n"] = n;
  if (graph) out["edges"] = graph->num_edges();
  out["steps"] = opt.steps;
  out["seed"] = opt.seed;
  out["lazy_steps"] = stats.lazy_steps();
  out["trace_edges"] = stats.trace_edge_count();
  out["max_multiplicity"] = stats.max_multiplicity();
  out["max_exits"] = exits.empty() ? 0 : *std::max_element(exits.begin(), exits.end());
  if (pattern) {
    out["pattern"] = pattern->name;
    out["contains"] = trace_contains(kept, n, *pattern);
  }
  return out;
}

void write_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  body(out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

struct HalftimeOptions {
  std::string pattern = "triangle";
  std::string base = "complete";
  std::string n_list;
  double p = 1.0;
  std::uint64_t m = 0;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  double rel_tol = 0.02;
  unsigned workers = 1;
  bool quenched = false;
  std::string out;
};

void halftime(const HalftimeOptions& opt) {
  ExperimentConfig cfg;
  cfg.base = parse_base_model(opt.base);
  cfg.n_list = parse_list(opt.n_list, "n");
  cfg.p = opt.p;
  cfg.m = opt.m;
  cfg.pattern = opt.pattern;
  cfg.trials = opt.trials;
  cfg.master_seed = opt.seed;
  cfg.rel_tol = opt.rel_tol;
  cfg.workers = opt.workers;
  cfg.quenched = opt.quenched;
  apply_environment(cfg);
  const Pattern p = parse_pattern(cfg.pattern);
  cfg.validate(p);
  std::vector<HalfTime> rows;
  for (std::size_t n : cfg.n_list) {
    rows.push_back(find_half_time(PointRunner(cfg, p, n), cfg.rel_tol));
    std::cerr << "n=" << n << " t_half=" << rows.back().t_half << '\n';
  }
  write_output(opt.out, [&](std::ostream& os) { write_halftime_csv(os, rows); });
}

json fit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const ThresholdFit f = fit_threshold_exponent(read_halftime_csv(in));
  json out;
  out["slope"] = f.slope;
  out["intercept"] = f.intercept;
  out["stderr"] = f.stderr_slope;
  json pts = json::array();
  for (const auto& [n, t] : f.points) pts.push_back({n, t});
  out["points"] = pts;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-walk trace laboratory"};
  app.require_subcommand(1);

  std::string pattern_spec;
  auto* analyze_cmd = app.add_subcommand("analyze", "Pattern invariants and predicted thresholds (JSON)");
  analyze_cmd->add_option("pattern", pattern_spec, "built-in name, edge text or JSON")->required();

  WalkOptions walk_opt;
  auto* walk_cmd = app.add_subcommand("walk", "Run one lazy walk and summarize it (JSON)");
  auto* graph_opt = walk_cmd->add_option("--graph", walk_opt.graph, "complete:n, gnp:n:p or gnm:n:m");
  auto* file_opt = walk_cmd->add_option("--graph-file", walk_opt.graph_file, "edge-list file");
  graph_opt->excludes(file_opt);
  walk_cmd->add_option("--steps", walk_opt.steps, "walk length t")->required();
  walk_cmd->add_option("--seed", walk_opt.seed, "generator seed");
  walk_cmd->add_option("--dump-steps", walk_opt.dump, "write X_0..X_t, one per line");
  walk_cmd->add_option("--pattern", walk_opt.pattern, "also report whether the trace contains it");

  std::string config_path;
  std::string sweep_out;
  int sweep_workers = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Probability grid from a TOML config (CSV)");
  sweep_cmd->add_option("--config", config_path, "experiment file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep_out, "output CSV (default stdout)");
  sweep_cmd->add_option("--workers", sweep_workers, "worker threads")->check(CLI::PositiveNumber);

  HalftimeOptions ht;
  auto* ht_cmd = app.add_subcommand("halftime", "Median appearance time per n (CSV)");
  ht_cmd->add_option("--pattern", ht.pattern, "pattern spec");
  ht_cmd->add_option("--base", ht.base, "complete, gnp or gnm");
  ht_cmd->add_option("--n-list", ht.n_list, "comma-separated n values")->required();
  ht_cmd->add_option("--p", ht.p, "gnp edge probability");
  ht_cmd->add_option("--m", ht.m, "gnm edge count");
  ht_cmd->add_option("--trials", ht.trials, "trials per evaluation")->check(CLI::PositiveNumber);
  ht_cmd->add_option("--seed", ht.seed, "master seed");
  ht_cmd->add_option("--rel-tol", ht.rel_tol, "relative bracket width");
  ht_cmd->add_option("--workers", ht.workers, "worker threads");
  ht_cmd->add_flag("--fixed-graph", ht.quenched, "one base graph per n for all trials");
  ht_cmd->add_option("--out", ht.out, "output CSV (default stdout)");

  std::string fit_in;
  auto* fit_cmd = app.add_subcommand("fit", "Log-log exponent fit of a half-time CSV (JSON)");
  fit_cmd->add_option("--in", fit_in, "half-time CSV")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact computations (JSON)");
  oracle_cmd->require_subcommand(1);
  std::string o_graph = "complete:6";
  std::string o_edges;
  std::string o_edges_b;
  std::size_t o_t = 0;
  std::uint64_t o_seed = 1;
  auto* cont_cmd = oracle_cmd->add_subcommand("containment", "P(all edges traversed by t)");
  cont_cmd->add_option("--graph", o_graph, "complete:n, gnp:n:p or gnm:n:m");
  cont_cmd->add_option("--edges", o_edges, "host edges, e.g. \"0 1, 1 2\"")->required();
  cont_cmd->add_option("--t", o_t, "walk length")->required();
  cont_cmd->add_option("--seed", o_seed, "seed for random graphs");
  auto* joint_cmd = oracle_cmd->add_subcommand("joint", "P(A and B), P(A), P(B)");
  joint_cmd->add_option("--graph", o_graph, "complete:n, gnp:n:p or gnm:n:m");
  joint_cmd->add_option("--edges-a", o_edges, "edge set A")->required();
  joint_cmd->add_option("--edges-b", o_edges_b, "edge set B");
  joint_cmd->add_option("--t", o_t, "walk length")->required();
  joint_cmd->add_option("--seed", o_seed, "seed for random graphs");
  std::size_t mix_steps = 10;
  std::optional<std::size_t> mix_start;
  auto* mix_cmd = oracle_cmd->add_subcommand("mixing", "TV distance to stationarity per step");
  mix_cmd->add_option("--graph", o_graph, "complete:n, gnp:n:p or gnm:n:m");
  mix_cmd->add_option("--steps", mix_steps, "last step s");
  mix_cmd->add_option("--start", mix_start, "start vertex (default: worst case)");
  mix_cmd->add_option("--seed", o_seed, "seed for random graphs");
  std::int64_t ws_t = 0;
  std::int64_t ws_w = 0;
  std::int64_t ws_r = 0;
  std::size_t ws_buffer = 1;
  bool ws_enumerate = false;
  auto* ws_cmd = oracle_cmd->add_subcommand("wsets", "Count W in [t] with |W| = w and r runs");
  ws_cmd->add_option("--t", ws_t)->required();
  ws_cmd->add_option("--w", ws_w)->required();
  ws_cmd->add_option("--r", ws_r)->required();
  ws_cmd->add_option("--buffer", ws_buffer, "B for the defect histogram");
  ws_cmd->add_flag("--enumerate", ws_enumerate, "also count exhaustively");

  app.add_subcommand("selftest", "Run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze_cmd) {
      print_json(analyze(pattern_spec));
    } else if (*walk_cmd) {
      if (walk_opt.graph.empty() && walk_opt.graph_file.empty()) {
        std::cerr << "walk: one of --graph or --graph-file is required\n";
        return kExitUsage;
      }
      print_json(walk(walk_opt));
    } else if (*sweep_cmd) {
      ExperimentConfig cfg = load_experiment_config(config_path);
      if (sweep_workers > 0) cfg.workers = static_cast<unsigned>(sweep_workers);
      apply_environment(cfg);
      if (cfg.t_list.empty()) throw std::invalid_argument("config: t list is empty");
      const auto rows = sweep(cfg);
      write_output(sweep_out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
      for (const auto& r : rows) {
        if (!r.error.empty()) std::cerr << "n=" << r.n << " t=" << r.t << ": " << r.error << '\n';
      }
    } else if (*ht_cmd) {
      halftime(ht);
    } else if (*fit_cmd) {
      print_json(fit(fit_in));
    } else if (*oracle_cmd) {
      Rng rng(o_seed);
      json out;
      if (*ws_cmd) {
        out["t"] = ws_t;
        out["w"] = ws_w;
        out["r"] = ws_r;
        out["value"] = count_time_sets_formula(ws_t, ws_w, ws_r).str();
        out["method"] = "formula";
        if (ws_enumerate) {
          const auto census = enumerate_time_sets(ws_t, ws_w, ws_r, ws_buffer);
          json e;
          e["t"] = ws_t;
          e["w"] = ws_w;
          e["r"] = ws_r;
          e["buffer"] = ws_buffer;
          e["value"] = std::to_string(census.count);
          e["by_defects"] = census.by_defects;
          e["method"] = "enum";
          out = json::array({out, e});
        }
      } else {
        const Graph g = build_graph(parse_graph_spec(o_graph), rng);
        if (*cont_cmd) {
          const auto edges = parse_edges(o_edges);
          out["graph"] = o_graph;
          out["edges"] = edges_json(edges);
          out["t"] = o_t;
          out["value"] = exact_containment_probability(g, edges, o_t);
          out["method"] = "dp";
        } else if (*joint_cmd) {
          const auto a = parse_edges(o_edges);
          const auto b = parse_edges(o_edges_b);
          const auto j = joint_containment_probability(g, a, b, o_t);
          out["graph"] = o_graph;
          out["edges_a"] = edges_json(a);
          out["edges_b"] = edges_json(b);
          out["t"] = o_t;
          out["value"] = {{"both", j.both}, {"a", j.a}, {"b", j.b}};
          out["positively_correlated"] = j.both > j.a * j.b;
          out["method"] = "dp";
        } else if (*mix_cmd) {
          std::vector<double> profile;
          if (mix_start) {
            if (*mix_start >= g.num_vertices()) throw std::invalid_argument("start vertex out of range");
            profile = mixing_profile(g, point_mass(g.num_vertices(), static_cast<Vertex>(*mix_start)),
                                     mix_steps);
          } else {
            profile = worst_case_mixing_profile(g, mix_steps);
          }
          out["graph"] = o_graph;
          out["steps"] = mix_steps;
          out["start"] = mix_start ? json(*mix_start) : json("worst");
          out["value"] = profile;
          out["method"] = "dp";
        }
      }
      print_json(out);
    } else {
      const int failures = cli::run_selftest(std::cout);
      return failures == 0 ? 0 : kExitSelftest;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line() << ", column " << e.column() << ")\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
