#include "ccto/instances.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <tuple>

#include "ccto/errors.hpp"
#include "ccto/oracle.hpp"

namespace ccto {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string f;
  while (in >> f) out.push_back(f);
  return out;
}

std::uint64_t parse_uint(const std::string& s, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw ParseError(line, std::string("expected non-negative integer for ") + what + ", got '" +
                               s + "'");
  }
  return v;
}

std::uint32_t parse_u32(const std::string& s, std::size_t line, const char* what) {
  auto v = parse_uint(s, line, what);
  if (v > 0xffffffffULL) throw ParseError(line, std::string(what) + " is too large");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
  InstanceFile file;
  bool have_version = false, have_n = false;
  std::set<std::tuple<VertexId, VertexId, TimeStep, TimeStep>> keys;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;

  auto vertex = [&](const std::string& s, const char* what) {
    if (!have_n) throw ParseError(line, "'n' must precede vertex references");
    auto v = parse_u32(s, line, what);
    if (v >= file.n) {
      throw ParseError(line, std::string(what) + " " + s + " out of range (n=" +
                                 std::to_string(file.n) + ")");
    }
    return v;
  };
  auto arity = [&](const std::vector<std::string>& f, std::size_t want) {
    if (f.size() != want) {
      throw ParseError(line, "'" + f[0] + "' takes " + std::to_string(want - 1) + " fields, got " +
                                 std::to_string(f.size() - 1));
    }
  };

  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto f = split_fields(raw);
    if (f.empty() || f[0][0] == '#') continue;
    const auto& key = f[0];
    if (key == "version") {
      arity(f, 2);
      if (have_version) throw ParseError(line, "duplicate 'version'");
      file.version = static_cast<int>(parse_u32(f[1], line, "version"));
      if (file.version != 1) throw ParseError(line, "unsupported version " + f[1]);
      have_version = true;
    } else if (!have_version) {
      throw ParseError(line, "first item must be 'version 1'");
    } else if (key == "n") {
      arity(f, 2);
      if (have_n) throw ParseError(line, "duplicate 'n'");
      file.n = parse_u32(f[1], line, "n");
      have_n = true;
    } else if (key == "name") {
      if (f.size() < 3) throw ParseError(line, "'name' takes an id and a text");
      auto v = vertex(f[1], "vertex");
      std::istringstream ls(raw);
      std::string skip, text;
      ls >> skip >> skip;
      std::getline(ls, text);
      text.erase(0, text.find_first_not_of(" \t"));
      text.erase(text.find_last_not_of(" \t") + 1);
      if (file.names.empty()) file.names.resize(file.n);
      if (!file.names[v].empty()) throw ParseError(line, "vertex " + f[1] + " named twice");
      file.names[v] = text;
    } else if (key == "tuple") {
      arity(f, 6);
      CostTuple t;
      t.from = vertex(f[1], "from");
      t.to = vertex(f[2], "to");
      t.depart = parse_u32(f[3], line, "depart");
      t.arrive = parse_u32(f[4], line, "arrive");
      auto c = parse_uint(f[5], line, "cost");
      if (t.from == t.to) throw ParseError(line, "tuple endpoints must differ");
      if (t.depart >= t.arrive) throw ParseError(line, "depart must precede arrive");
      if (c == 0) throw ParseError(line, "cost must be positive on a cross-vertex tuple");
      if (c > Cost::kMaxFinite) throw ParseError(line, "cost is too large");
      t.cost = Cost(c);
      if (!keys.emplace(t.from, t.to, t.depart, t.arrive).second) {
        throw ParseError(line, "duplicate tuple key");
      }
      file.tuples.push_back(t);
    } else if (key == "query") {
      arity(f, 5);
      if (file.query) throw ParseError(line, "duplicate 'query'");
      Query q;
      q.source = vertex(f[1], "source");
      q.sink = vertex(f[2], "sink");
      q.k = parse_u32(f[3], line, "k");
      if (q.k == 0) throw ParseError(line, "k must be positive");
      auto b = parse_uint(f[4], line, "budget");
      if (b > Cost::kMaxFinite) throw ParseError(line, "budget is too large");
      q.budget = Cost(b);
      file.query = q;
    } else if (key == "subforest") {
      arity(f, 3);
      auto u = vertex(f[1], "u");
      auto v = vertex(f[2], "v");
      if (u == v) throw ParseError(line, "subforest edge needs two distinct vertices");
      file.subforest.emplace_back(u, v);
    } else {
      throw ParseError(line, "unknown item '" + key + "'");
    }
  }
  if (!have_version) throw ParseError(line, "missing 'version 1'");
  if (!have_n) throw ParseError(line, "missing 'n'");
  return file;
}

std::string serialize_instance(const InstanceFile& file) {
  std::ostringstream out;
  out << "version " << file.version << "\n";
  out << "n " << file.n << "\n";
  for (std::size_t v = 0; v < file.names.size(); ++v) {
    if (!file.names[v].empty()) out << "name " << v << " " << file.names[v] << "\n";
  }
  for (const auto& t : file.tuples) {
    out << "tuple " << t.from << " " << t.to << " " << t.depart << " " << t.arrive << " "
        << t.cost.value() << "\n";
  }
  if (file.query) {
    const auto& q = *file.query;
    out << "query " << q.source << " " << q.sink << " " << q.k << " " << q.budget.value() << "\n";
  }
  for (const auto& e : file.subforest) out << "subforest " << e.lo << " " << e.hi << "\n";
  return out.str();
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

TemporalCostGraph to_graph(const InstanceFile& file) {
  std::vector<std::string> names;
  if (!file.names.empty()) {
    names = file.names;
    for (std::size_t v = 0; v < names.size(); ++v) {
      if (names[v].empty()) names[v] = std::to_string(v);
    }
  }
  return TemporalCostGraph(file.n, file.tuples, std::move(names));
}

Instance to_instance(const InstanceFile& file) {
  if (!file.query) throw UsageError("instance has no query");
  return Instance{to_graph(file), *file.query};
}

InstanceFile to_file(const Instance& inst, const std::vector<Edge>& subforest) {
  InstanceFile file;
  file.n = inst.graph.vertex_count();
  file.names = inst.graph.names();
  file.tuples.assign(inst.graph.tuples().begin(), inst.graph.tuples().end());
  file.query = inst.query;
  file.subforest = subforest;
  return file;
}

TemporalCostGraph from_temporal_graph(std::size_t n, const std::vector<LabelledEdge>& edges) {
  std::vector<CostTuple> tuples;
  for (const auto& e : edges) {
    for (auto t : e.labels) {
      tuples.push_back({e.u, e.v, t, t + 1, Cost(1)});
      tuples.push_back({e.v, e.u, t, t + 1, Cost(1)});
    }
  }
  return TemporalCostGraph(n, std::move(tuples));
}

Instance starexp_reduction(const TemporalStar& star) {
  const std::size_t leaves = star.leaves();
  std::vector<LabelledEdge> edges;
  for (std::size_t i = 0; i < leaves; ++i) {
    if (star.labels[i].empty()) throw UsageError("leaf " + std::to_string(i + 1) + " has no labels");
    edges.push_back({0, static_cast<VertexId>(i + 1), star.labels[i]});
  }
  Instance inst;
  inst.graph = from_temporal_graph(leaves + 1, edges);
  inst.query = Query{0, 0, static_cast<std::uint32_t>(leaves + 1), Cost(2 * leaves)};
  return inst;
}

Instance random_instance(const RandomSpec& spec) {
  if (spec.n == 0 || spec.horizon == 0 || spec.max_cost == 0) {
    throw UsageError("random_instance needs n, T and max_cost positive");
  }
  if (!(spec.density > 0 && spec.density <= 1)) throw UsageError("density must lie in (0,1]");
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  const auto n = static_cast<VertexId>(spec.n);

  std::vector<std::pair<VertexId, VertexId>> arcs;
  if (spec.shape == Shape::tree) {
    if (n >= 2) {
      // Prüfer sequence -> uniform labelled tree.
      std::vector<VertexId> code(n - 2);
      for (auto& c : code) c = static_cast<VertexId>(uniform(0, n - 1));
      std::vector<std::uint32_t> degree(n, 1);
      for (auto c : code) ++degree[c];
      for (auto c : code) {
        VertexId leaf = 0;
        while (degree[leaf] != 1) ++leaf;
        arcs.emplace_back(leaf, c);
        --degree[leaf];
        --degree[c];
      }
      VertexId a = n, b = n;
      for (VertexId v = 0; v < n; ++v) {
        if (degree[v] == 1) (a == n ? a : b) = v;
      }
      arcs.emplace_back(a, b);
      const auto tree_edges = arcs.size();
      for (std::size_t i = 0; i < tree_edges; ++i) arcs.emplace_back(arcs[i].second, arcs[i].first);
    }
  } else {
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = 0; v < n; ++v) {
        if (u != v) arcs.emplace_back(u, v);
      }
    }
  }

  std::bernoulli_distribution keep(spec.density);
  std::vector<CostTuple> tuples;
  for (auto [u, v] : arcs) {
    for (TimeStep d = 0; d < spec.horizon; ++d) {
      for (TimeStep a = d + 1; a <= spec.horizon; ++a) {
        if (spec.max_duration && a - d > spec.max_duration) break;
        if (keep(rng)) tuples.push_back({u, v, d, a, Cost(uniform(1, spec.max_cost))});
      }
    }
  }

  Instance inst;
  inst.graph = TemporalCostGraph(spec.n, std::move(tuples));
  auto& q = inst.query;
  q.source = static_cast<VertexId>(uniform(0, n - 1));
  if (n >= 2 && uniform(0, 1) == 1) {
    q.sink = static_cast<VertexId>(uniform(0, n - 2));
    if (q.sink >= q.source) ++q.sink;
  } else {
    q.sink = q.source;
  }
  q.k = n >= 2 ? static_cast<std::uint32_t>(uniform(2, n)) : 1;
  q.budget = Cost(2 * spec.n * spec.max_cost);
  if (spec.n <= 10) {
    auto jitter = static_cast<std::int64_t>(uniform(0, 2)) - 1;
    auto opt = solve_exact(inst).optimal_cost;
    if (opt.is_finite()) {
      auto b = static_cast<std::int64_t>(opt.value()) + jitter;
      q.budget = Cost(static_cast<std::uint64_t>(std::max<std::int64_t>(0, b)));
    } else {
      q.budget = Cost(uniform(0, 2 * spec.n * spec.max_cost));
    }
  } else {
    q.budget = Cost(uniform(0, 2 * spec.n * spec.max_cost));
  }
  return inst;
}

}  // namespace ccto
