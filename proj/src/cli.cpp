#include "ccto/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "ccto/colorcoding.hpp"
#include "ccto/errors.hpp"
#include "ccto/expanded.hpp"
#include "ccto/instances.hpp"
#include "ccto/oracle.hpp"
#include "ccto/tree_solvers.hpp"

namespace ccto {

namespace {

constexpr std::uint32_t kAutoVitwWidth = 12;
constexpr std::size_t kAutoOracleVertices = 10;
constexpr std::uint64_t kAutoColourings = 1'000'000;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string format_prob(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", p);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  return s;
}

std::uint32_t to_u32(const std::string& s, const std::string& what) {
  auto t = trim(s);
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || t[0] == '-') {
    throw UsageError("bad " + what + " '" + s + "'");
  }
  return static_cast<std::uint32_t>(v);
}

/// Vertex given by id or by display name.
VertexId resolve_vertex(const TemporalCostGraph& g, const std::string& s) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!g.names().empty() && g.names()[v] == s) return v;
  }
  auto v = to_u32(s, "vertex");
  g.check_vertex(v);
  return v;
}

/// "u v;u v" or "u-v,u-v".
std::vector<Edge> parse_edge_list(const TemporalCostGraph& g, const std::string& text) {
  std::vector<Edge> out;
  std::string norm = text;
  std::replace(norm.begin(), norm.end(), ',', ';');
  for (auto item : split(norm, ';')) {
    std::replace(item.begin(), item.end(), '-', ' ');
    std::istringstream in(item);
    std::string a, b, extra;
    if (!(in >> a)) continue;
    if (!(in >> b) || (in >> extra)) throw UsageError("bad subforest edge '" + item + "'");
    out.emplace_back(resolve_vertex(g, a), resolve_vertex(g, b));
  }
  return out;
}

std::set<TimeStep> parse_label_set(const std::string& text) {
  std::set<TimeStep> out;
  for (const auto& t : split(text, ',')) {
    if (!trim(t).empty()) out.insert(to_u32(t, "label"));
  }
  return out;
}

/// "u v @ t1,t2"
LabelledEdge parse_temporal_edge(const std::string& text) {
  auto at = text.find('@');
  if (at == std::string::npos) throw UsageError("edge '" + text + "' needs the form 'u v @ t1,t2'");
  std::istringstream in(text.substr(0, at));
  std::string a, b, extra;
  if (!(in >> a >> b) || (in >> extra)) throw UsageError("edge '" + text + "' needs two endpoints");
  LabelledEdge e{to_u32(a, "vertex"), to_u32(b, "vertex"), parse_label_set(text.substr(at + 1))};
  if (e.u == e.v) throw UsageError("edge '" + text + "' is a loop");
  return e;
}

std::string status_word(const SolveResult& r) {
  if (r.feasible) return "feasible";
  if (r.cost_status == CostStatus::upper_bound) return "not-found";
  return "infeasible";
}

std::string cost_status_word(CostStatus s) {
  switch (s) {
    case CostStatus::exact:
      return "exact";
    case CostStatus::upper_bound:
      return "upper_bound";
    case CostStatus::unknown:
      return "unknown";
  }
  return "unknown";
}

void print_structured(std::ostream& out, const Instance& inst, const SolveResult& r) {
  out << "status " << status_word(r) << "\n";
  out << "solver " << r.solver << "\n";
  out << "cost " << r.optimal_cost << "\n";
  out << "cost_status " << cost_status_word(r.cost_status) << "\n";
  if (r.cost_status == CostStatus::upper_bound && !r.feasible) {
    out << "failure_probability " << format_prob(r.failure_probability) << "\n";
  }
  out << "states " << r.stats.states << "\n";
  out << "arcs " << r.stats.arcs << "\n";
  out << "max_live_states " << r.stats.max_live_states << "\n";
  out << "trials " << r.stats.trials << "\n";
  out << "permutations " << r.stats.permutations << "\n";
  out << "width " << r.stats.width << "\n";
  out << "time_shift " << r.stats.time_shift << "\n";
  if (r.witness) {
    out << "witness " << r.witness->steps.size() << "\n";
    for (const auto& s : r.witness->steps) {
      out << "tuple " << s.from << " " << s.to << " " << s.depart << " " << s.arrive << " "
          << inst.graph.cost(s) << "\n";
    }
  }
}

void print_human(std::ostream& out, const Instance& inst, const SolveResult& r) {
  const auto& g = inst.graph;
  if (r.feasible) {
    out << "feasible: yes\n";
  } else if (r.cost_status == CostStatus::upper_bound) {
    out << "feasible: not found (failure prob <= " << format_prob(r.failure_probability) << ")\n";
  } else {
    out << "feasible: no\n";
  }
  out << "optimal cost: " << r.optimal_cost << " (" << cost_status_word(r.cost_status) << ")\n";
  out << "solver: " << r.solver << "\n";
  if (r.witness) {
    out << "witness (" << r.witness->steps.size() << " steps):\n";
    for (const auto& s : r.witness->steps) {
      out << "  " << g.vertex_name(s.from) << " -> " << g.vertex_name(s.to) << "  depart "
          << s.depart << " arrive " << s.arrive << "  cost " << g.cost(s) << "\n";
    }
  }
  out << "stats: states=" << r.stats.states << " arcs=" << r.stats.arcs
      << " max_live=" << r.stats.max_live_states;
  if (r.stats.trials) out << " trials=" << r.stats.trials;
  if (r.stats.permutations) out << " permutations=" << r.stats.permutations;
  if (r.stats.width) out << " width=" << r.stats.width;
  if (r.stats.time_shift) out << " time_shift=" << r.stats.time_shift;
  out << " time=" << format_prob(r.stats.millis) << "ms\n";
}

struct SolverFlags {
  std::string mode = "auto";  // auto | exhaustive | randomized
  std::uint64_t trials = 0;
  double delta = 1e-3;
  std::uint64_t seed = 0;
};

SolveResult run_solver(const std::string& name, const Instance& inst,
                       const std::vector<Edge>& subforest, const SolverFlags& flags,
                       const AnalyzeReport& report) {
  if (name == "oracle") return solve_exact(inst);
  if (name == "tree") return solve_tree_closed(inst);
  if (name == "subforest") return solve_subforest(inst, subforest);
  if (name == "sparse") return solve_sparse_triples(inst);
  if (name == "vitw") {
    // The sweep adds the endpoints to the bags, so allow two extra.
    VitwOptions opt;
    opt.max_width = kAutoVitwWidth + 2;
    return solve_vitw(inst, opt);
  }
  if (name == "colorcoding" || name == "colorcoding-exhaustive" ||
      name == "colorcoding-randomized") {
    ColorCodingOptions opt;
    opt.trials = flags.trials;
    opt.delta = flags.delta;
    opt.seed = flags.seed;
    std::string mode = flags.mode;
    if (name == "colorcoding-exhaustive") mode = "exhaustive";
    if (name == "colorcoding-randomized") mode = "randomized";
    if (mode == "auto") mode = report.colourings <= kAutoColourings ? "exhaustive" : "randomized";
    opt.mode = mode == "randomized" ? ColourMode::randomized : ColourMode::exhaustive;
    return solve_color_coding(inst, opt);
  }
  throw UsageError("unknown algorithm '" + name + "'");
}

int cmd_solve(const std::string& path, const std::string& algorithm,
              const std::optional<std::string>& source, const std::optional<std::string>& sink,
              const std::optional<std::uint32_t>& k, const std::optional<std::uint64_t>& budget,
              const std::string& format, const SolverFlags& flags,
              const std::optional<std::string>& subforest_flag,
              const std::optional<std::string>& export_path, std::ostream& out) {
  auto file = load_instance(path);
  Instance inst;
  inst.graph = to_graph(file);
  if (!file.query && !(source && sink && k && budget)) {
    throw UsageError("instance has no query; pass --source, --sink, --k and --budget");
  }
  inst.query = file.query.value_or(Query{});
  if (source) inst.query.source = resolve_vertex(inst.graph, *source);
  if (sink) inst.query.sink = resolve_vertex(inst.graph, *sink);
  if (k) inst.query.k = *k;
  if (budget) {
    if (*budget > Cost::kMaxFinite) throw UsageError("budget is too large");
    inst.query.budget = Cost(*budget);
  }
  inst.validate();
  auto subforest = subforest_flag ? parse_edge_list(inst.graph, *subforest_flag) : file.subforest;

  if (export_path) {
    std::ofstream os(*export_path);
    if (!os) throw UsageError("cannot write " + *export_path);
    build_time_expanded(inst.graph).write_text(os);
  }

  std::optional<SolveResult> res = budget_bound_rule(inst);
  if (!res) {
    auto report = analyze(inst.graph, inst.query, subforest);
    auto name = algorithm == "auto" ? auto_choice(report) : algorithm;
    res = run_solver(name, inst, subforest, flags, report);
  }
  if (format == "structured") {
    print_structured(out, inst, *res);
  } else {
    print_human(out, inst, *res);
  }
  return res->feasible ? 0 : 1;
}

void print_report(std::ostream& out, const TemporalCostGraph& g, const AnalyzeReport& r) {
  out << "n " << r.n << "\n";
  out << "T " << r.lifetime << "\n";
  for (const auto& e : r.traversal) {
    out << "traversal " << g.vertex_name(e.edge.lo) << " " << g.vertex_name(e.edge.hi) << " "
        << e.number << "\n";
  }
  if (r.bags) {
    out << "phi " << r.bags->width << "\n";
    for (TimeStep t = 0; t < r.bags->bags.size(); ++t) {
      out << "bag " << t;
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (r.bags->contains(t, v)) out << " " << g.vertex_name(v);
      }
      out << "\n";
    }
  } else {
    out << "phi unknown\n";
  }
  out << "connected " << yes_no(r.connected) << "\n";
  if (!r.connected) out << "warning underlying graph is disconnected\n";
  for (const auto& [name, why] : r.applicability) {
    out << "applicable " << name << " " << yes_no(why.empty());
    if (!why.empty()) out << " " << why;
    out << "\n";
  }
  if (r.has_query) out << "auto " << auto_choice(r) << "\n";
}

int cmd_analyze(const std::string& path, std::ostream& out) {
  auto file = load_instance(path);
  auto g = to_graph(file);
  auto report = analyze(g, file.query, file.subforest);
  print_report(out, g, report);
  return 0;
}

struct BenchRow {
  std::string instance;
  std::string solver;
  std::optional<SolveResult> result;
  std::string skipped;
};

int cmd_bench(const std::vector<std::string>& files, const std::vector<std::string>& solvers,
              const RandomSpec& random_spec, std::size_t random_count, const SolverFlags& flags,
              std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, std::pair<Instance, std::vector<Edge>>>> suite;
  for (const auto& f : files) {
    auto file = load_instance(f);
    suite.push_back({f, {to_instance(file), file.subforest}});
  }
  for (std::size_t i = 0; i < random_count; ++i) {
    auto spec = random_spec;
    spec.seed = random_spec.seed + i;
    suite.push_back({"random-" + std::to_string(spec.seed), {random_instance(spec), {}}});
  }

  out << "instance\tsolver\tfeasible\tcost\tstates\tmillis\n";
  int status = 0;
  for (const auto& [label, item] : suite) {
    const auto& [inst, subforest] = item;
    auto report = analyze(inst.graph, inst.query, subforest);
    std::vector<BenchRow> rows;
    for (const auto& s : solvers) {
      BenchRow row{label, s, std::nullopt, ""};
      try {
        row.result = run_solver(s, inst, subforest, flags, report);
      } catch (const NotApplicable& e) {
        row.skipped = e.what();
      } catch (const CapabilityError& e) {
        row.skipped = e.what();
      }
      if (row.result) {
        const auto& r = *row.result;
        out << label << "\t" << s << "\t" << status_word(r) << "\t" << r.optimal_cost << "\t"
            << r.stats.states << "\t" << format_prob(r.stats.millis) << "\n";
      } else {
        out << label << "\t" << s << "\tskipped\t-\t-\t-\n";
      }
      rows.push_back(std::move(row));
    }
    const BenchRow* ref = nullptr;
    for (const auto& row : rows) {
      if (row.result && row.result->cost_status == CostStatus::exact) {
        ref = &row;
        break;
      }
    }
    if (!ref) continue;
    for (const auto& row : rows) {
      if (!row.result || &row == ref) continue;
      const auto& a = *ref->result;
      const auto& b = *row.result;
      bool agree = b.cost_status == CostStatus::exact
                       ? a.feasible == b.feasible && a.optimal_cost == b.optimal_cost
                       : !b.feasible || (a.feasible && !(b.optimal_cost < a.optimal_cost));
      if (!agree) {
        err << "disagreement on " << label << ": " << ref->solver << " (" << status_word(a) << ", "
            << a.optimal_cost << ") vs " << row.solver << " (" << status_word(b) << ", "
            << b.optimal_cost << ")\n";
        status = 3;
      }
    }
  }
  return status;
}

}  // namespace

AnalyzeReport analyze(const TemporalCostGraph& g, const std::optional<Query>& query,
                      const std::vector<Edge>& subforest) {
  AnalyzeReport r;
  r.n = g.vertex_count();
  r.lifetime = g.lifetime();
  for (const auto& e : g.edges()) r.traversal.push_back({e, max_traversal_number(g, e)});
  if (g.vertex_count() <= 64) r.bags = vitw_sequence(g);
  r.connected = g.is_connected();
  r.has_query = query.has_value();
  if (query) r.query = *query;

  auto verdict = [](const std::optional<std::string>& why) { return why.value_or(""); };
  OracleLimits limits;
  r.applicability["oracle"] =
      r.n <= limits.max_vertices ? "" : "n exceeds " + std::to_string(limits.max_vertices);
  r.applicability["tree"] = verdict(tree_closed_problem(Instance{g, r.query}, r.has_query));
  r.applicability["subforest"] = verdict(subforest_problem(g, subforest));
  if (r.applicability["subforest"].empty() && query) {
    try {
      auto parts = partition_forest_paths(g, subforest, query->source, query->sink);
      if (parts.paths.size() > SubforestOptions{}.max_paths) {
        r.applicability["subforest"] = "subforest splits into " +
                                       std::to_string(parts.paths.size()) + " paths (max " +
                                       std::to_string(SubforestOptions{}.max_paths) + ")";
      }
    } catch (const UsageError& e) {
      r.applicability["subforest"] = e.what();
    }
  }
  r.applicability["sparse"] = verdict(sparse_triples_problem(g));
  r.applicability["vitw"] = r.phi() <= kAutoVitwWidth
                                ? ""
                                : "width " + (r.bags ? std::to_string(r.phi()) : "unknown") +
                                      " exceeds " + std::to_string(kAutoVitwWidth);
  r.applicability["colorcoding"] = "";
  if (query) r.colourings = exhaustive_colouring_count(Instance{g, *query});
  return r;
}

std::optional<SolveResult> budget_bound_rule(const Instance& inst) {
  const auto& q = inst.query;
  if (q.budget.is_infinite() || q.k <= q.budget.value() + 1) return std::nullopt;
  SolveResult r;
  r.solver = "preprocess";
  r.cost_status = CostStatus::unknown;
  return r;
}

std::string auto_choice(const AnalyzeReport& report) {
  if (report.n <= kAutoOracleVertices) return "oracle";
  if (report.applies("sparse")) return "sparse";
  if (report.applies("tree")) return "tree";
  if (report.phi() <= kAutoVitwWidth) return "vitw";
  return report.colourings <= kAutoColourings ? "colorcoding-exhaustive" : "colorcoding-randomized";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal cost-graph orienteering solvers", "ccto"};
  app.require_subcommand(1);

  std::string path, algorithm = "auto", format = "human";
  std::optional<std::string> source, sink, subforest, export_path;
  std::optional<std::uint32_t> k;
  std::optional<std::uint64_t> budget;
  SolverFlags flags;
  const std::vector<std::string> algorithms{"auto",   "oracle", "tree",       "subforest",
                                            "sparse", "vitw",   "colorcoding"};

  auto* solve = app.add_subcommand("solve", "Decide an instance and print the best walk");
  solve->add_option("instance", path, "Instance file")->required();
  solve->add_option("--algorithm", algorithm)->check(CLI::IsMember(algorithms));
  solve->add_option("--source", source, "Vertex id or name");
  solve->add_option("--sink", sink, "Vertex id or name");
  solve->add_option("--k", k, "Distinct vertices to visit")->check(CLI::PositiveNumber);
  solve->add_option("--budget", budget, "Fuel budget");
  solve->add_option("--format", format)->check(CLI::IsMember({"human", "structured"}));
  solve->add_option("--mode", flags.mode, "Colour coding mode")
      ->check(CLI::IsMember({"auto", "exhaustive", "randomized"}));
  solve->add_option("--trials", flags.trials, "Randomized trials (default from --delta)");
  solve->add_option("--delta", flags.delta, "Randomized failure probability")
      ->check(CLI::Range(1e-12, 0.999999));
  solve->add_option("--seed", flags.seed);
  solve->add_option("--subforest", subforest, "Edges 'u v;u v' for the subforest solver");
  solve->add_option("--export-expanded", export_path, "Write the time expanded graph here");

  std::string analyze_path;
  auto* an = app.add_subcommand("analyze", "Report structural parameters");
  an->add_option("instance", analyze_path, "Instance file")->required();

  auto* gen = app.add_subcommand("generate", "Write an instance to standard output");
  gen->require_subcommand(1);
  std::size_t leaves = 0;
  std::string labels;
  auto* star = gen->add_subcommand("star-exp", "Star exploration reduction");
  star->add_option("--leaves", leaves)->required();
  star->add_option("--labels", labels, "Label sets per leaf, e.g. \"1,2;3,4\"")->required();

  RandomSpec spec;
  std::string shape = "general";
  auto* rnd = gen->add_subcommand("random", "Seeded random instance");
  rnd->add_option("--seed", spec.seed);
  rnd->add_option("--n", spec.n)->check(CLI::PositiveNumber);
  rnd->add_option("--T", spec.horizon)->check(CLI::PositiveNumber);
  rnd->add_option("--density", spec.density)->check(CLI::Range(1e-9, 1.0));
  rnd->add_option("--max-cost", spec.max_cost)->check(CLI::PositiveNumber);
  rnd->add_option("--max-duration", spec.max_duration);
  rnd->add_option("--shape", shape)->check(CLI::IsMember({"general", "tree"}));

  std::vector<std::string> temporal_edges;
  std::optional<std::size_t> temporal_n;
  auto* ft = gen->add_subcommand("from-temporal", "Unit-cost graph from edge labels");
  ft->add_option("--edge", temporal_edges, "\"u v @ t1,t2\" (repeatable)")->required();
  ft->add_option("--n", temporal_n, "Vertex count (default: largest id + 1)");

  std::vector<std::string> bench_files;
  std::string bench_solvers = "oracle,tree,vitw";
  std::size_t bench_random = 0;
  RandomSpec bench_spec;
  std::string bench_shape = "tree";
  SolverFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Run solvers on a suite and check agreement");
  bench->add_option("instances", bench_files, "Instance files");
  bench->add_option("--solvers", bench_solvers, "Comma separated solver names");
  bench->add_option("--random", bench_random, "Append this many generated instances");
  bench->add_option("--seed", bench_spec.seed);
  bench->add_option("--n", bench_spec.n)->check(CLI::PositiveNumber);
  bench->add_option("--T", bench_spec.horizon)->check(CLI::PositiveNumber);
  bench->add_option("--density", bench_spec.density)->check(CLI::Range(1e-9, 1.0));
  bench->add_option("--shape", bench_shape)->check(CLI::IsMember({"general", "tree"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*solve) {
      return cmd_solve(path, algorithm, source, sink, k, budget, format, flags, subforest,
                       export_path, out);
    }
    if (*an) return cmd_analyze(analyze_path, out);
    if (*star) {
      auto sets = split(labels, ';');
      if (sets.size() != leaves) {
        throw UsageError("--labels has " + std::to_string(sets.size()) + " sets for " +
                         std::to_string(leaves) + " leaves");
      }
      TemporalStar s;
      for (const auto& set : sets) s.labels.push_back(parse_label_set(set));
      out << serialize_instance(to_file(starexp_reduction(s)));
      return 0;
    }
    if (*rnd) {
      spec.shape = shape == "tree" ? Shape::tree : Shape::general;
      out << serialize_instance(to_file(random_instance(spec)));
      return 0;
    }
    if (*ft) {
      std::vector<LabelledEdge> edges;
      std::size_t n = 0;
      for (const auto& e : temporal_edges) {
        edges.push_back(parse_temporal_edge(e));
        n = std::max<std::size_t>(n, std::max(edges.back().u, edges.back().v) + 1);
      }
      if (temporal_n) {
        if (*temporal_n < n) throw UsageError("--n is smaller than the largest vertex id");
        n = *temporal_n;
      }
      InstanceFile file;
      file.n = n;
      auto g = from_temporal_graph(n, edges);
      file.tuples.assign(g.tuples().begin(), g.tuples().end());
      out << serialize_instance(file);
      return 0;
    }
    if (*bench) {
      std::vector<std::string> names;
      for (const auto& s : split(bench_solvers, ',')) {
        if (!trim(s).empty()) names.push_back(trim(s));
      }
      bench_spec.shape = bench_shape == "tree" ? Shape::tree : Shape::general;
      return cmd_bench(bench_files, names, bench_spec, bench_random, bench_flags, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ccto
