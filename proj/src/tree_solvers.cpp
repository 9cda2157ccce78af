#include "ccto/tree_solvers.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "ccto/detail/timer.hpp"
#include "ccto/errors.hpp"
#include "ccto/expanded.hpp"

namespace ccto {

namespace {

std::string edge_name(const TemporalCostGraph& g, Edge e) {
  return "{" + g.vertex_name(e.lo) + "," + g.vertex_name(e.hi) + "}";
}

std::optional<std::string> traversal_problem(const TemporalCostGraph& g,
                                             const std::set<Edge>& exempt) {
  for (const auto& e : g.edges()) {
    if (exempt.count(e)) continue;
    auto m = max_traversal_number(g, e);
    if (m > 3) {
      return "edge " + edge_name(g, e) + " has max traversal number " + std::to_string(m) +
             " (> 3)";
    }
  }
  return std::nullopt;
}

/// Groups tuple ids by (from, depart) so arcs can be emitted in tail order.
std::vector<std::vector<std::uint32_t>> tuples_by_tail(const TemporalCostGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::uint32_t>> out(n * (g.lifetime() + 1));
  for (std::uint32_t i = 0; i < g.tuples().size(); ++i) {
    const auto& t = g.tuples()[i];
    out[t.depart * n + t.from].push_back(i);
  }
  return out;
}

Walk walk_from_tags(const TemporalCostGraph& g, const std::vector<std::int64_t>& tags) {
  Walk w;
  for (auto tag : tags) {
    if (tag != Dag::kNoTag) w.steps.push_back(g.tuples()[tag].traversal());
  }
  return w;
}

/// Shortest path over (time, counter, vertex) states, counter in [0, k].
/// `next` maps (tuple, counter) to the successor counter.
template <typename Next>
SolveResult counted_dag_solve(const Instance& inst, std::uint32_t start, Next next,
                              std::string solver) {
  detail::Stopwatch clock;
  const auto& g = inst.graph;
  const auto& q = inst.query;
  const std::uint32_t n = static_cast<std::uint32_t>(g.vertex_count());
  const std::uint32_t levels = q.k + 1;
  const TimeStep horizon = g.lifetime();
  auto id = [&](TimeStep t, std::uint32_t c, VertexId v) { return (t * levels + c) * n + v; };

  auto by_tail = tuples_by_tail(g);
  Dag dag(static_cast<std::size_t>(horizon + 1) * levels * n);
  for (TimeStep t = 0; t <= horizon; ++t) {
    for (std::uint32_t c = 0; c < levels; ++c) {
      for (VertexId v = 0; v < n; ++v) {
        auto tail = id(t, c, v);
        if (t < horizon) dag.add_arc(tail, id(t + 1, c, v), Cost::zero());
        for (auto tid : by_tail[t * n + v]) {
          const auto& tup = g.tuples()[tid];
          dag.add_arc(tail, id(tup.arrive, next(tup, c), tup.to), tup.cost, tid);
        }
      }
    }
  }
  dag.seal();

  auto path = dag_shortest_path(dag, id(0, std::min(start, q.k), q.source), id(horizon, q.k, q.sink));
  SolveResult res;
  res.solver = std::move(solver);
  res.optimal_cost = path.cost;
  if (path.cost.is_finite()) res.witness = walk_from_tags(g, path.arc_tags);
  res.feasible = res.optimal_cost <= q.budget;
  res.stats.states = dag.node_count();
  res.stats.arcs = dag.arc_count();
  res.stats.millis = clock.millis();
  return res;
}

}  // namespace

std::size_t triple_count(const TemporalCostGraph& g, VertexId v) {
  std::set<std::tuple<VertexId, TimeStep, TimeStep>> triples;
  for (auto id : g.outgoing(v)) {
    const auto& t = g.tuples()[id];
    triples.emplace(t.to, t.depart, t.arrive);
  }
  for (auto id : g.incoming(v)) {
    const auto& t = g.tuples()[id];
    triples.emplace(t.from, t.depart, t.arrive);
  }
  return triples.size();
}

std::optional<std::string> tree_closed_problem(const Instance& inst, bool check_query) {
  const auto& g = inst.graph;
  if (check_query && inst.query.source != inst.query.sink) return "source and sink differ";
  if (!is_forest(g)) return "underlying graph is not a tree";
  return traversal_problem(g, {});
}

std::optional<std::string> subforest_problem(const TemporalCostGraph& g,
                                             const std::vector<Edge>& subforest) {
  if (!is_forest(g)) return "underlying graph is not a tree";
  std::set<Edge> exempt;
  for (const auto& e : subforest) {
    if (e.lo >= g.vertex_count() || e.hi >= g.vertex_count() || !g.has_edge(e.lo, e.hi)) {
      return "subforest pair " + std::to_string(e.lo) + " " + std::to_string(e.hi) +
             " is not an edge";
    }
    exempt.insert(e);
  }
  return traversal_problem(g, exempt);
}

std::optional<std::string> sparse_triples_problem(const TemporalCostGraph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto c = triple_count(g, v);
    if (c > 3) {
      return "vertex " + g.vertex_name(v) + " participates in " + std::to_string(c) +
             " tuples (max 3 distinct triples)";
    }
  }
  return std::nullopt;
}

SolveResult solve_tree_closed(const Instance& inst) {
  inst.validate();
  if (auto why = tree_closed_problem(inst)) throw NotApplicable("tree: " + *why);
  const auto& q = inst.query;
  auto depth = bfs_distances(inst.graph, q.source);
  // The counter holds the number of distinct vertices seen, source included;
  // in a closed walk each edge is used 0 or 2 times, so moving away from the
  // source always reaches a new vertex.
  auto next = [&](const CostTuple& t, std::uint32_t c) {
    return depth[t.from] < depth[t.to] ? std::min(c + 1, q.k) : c;
  };
  return counted_dag_solve(inst, 1, next, "tree");
}

SolveResult solve_sparse_triples(const Instance& inst) {
  inst.validate();
  if (auto why = sparse_triples_problem(inst.graph)) throw NotApplicable("sparse: " + *why);
  const auto& q = inst.query;
  // Source and sink are pre-counted; every other vertex is entered at most once.
  const std::uint32_t start = q.source == q.sink ? 1 : 2;
  auto next = [&](const CostTuple& t, std::uint32_t c) {
    return t.to == q.source || t.to == q.sink ? c : std::min(c + 1, q.k);
  };
  return counted_dag_solve(inst, start, next, "sparse");
}

PathDecomposition partition_forest_paths(const TemporalCostGraph& g,
                                         const std::vector<Edge>& subforest, VertexId source,
                                         VertexId sink) {
  g.check_vertex(source);
  g.check_vertex(sink);
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<VertexId>> adj(n);
  std::vector<VertexId> uf(n);
  std::iota(uf.begin(), uf.end(), 0u);
  auto find = [&](VertexId v) {
    while (uf[v] != v) v = uf[v] = uf[uf[v]];
    return v;
  };
  std::set<Edge> seen;
  for (const auto& e : subforest) {
    if (e.lo >= n || e.hi >= n || e.lo == e.hi) throw UsageError("subforest edge out of range");
    if (!seen.insert(e).second) throw UsageError("duplicate subforest edge");
    auto a = find(e.lo), b = find(e.hi);
    if (a == b) throw UsageError("subforest edges contain a cycle");
    uf[a] = b;
    adj[e.lo].push_back(e.hi);
    adj[e.hi].push_back(e.lo);
  }

  PathDecomposition out;
  out.anchor_path = forest_path(g, source, sink);
  if (out.anchor_path.empty()) out.anchor_path = {source};

  auto dist = bfs_distances(g, source);
  std::vector<bool> in_forest(n);
  for (VertexId v = 0; v < n; ++v) in_forest[v] = !adj[v].empty();

  // Root each component at its vertex nearest the source.
  std::vector<VertexId> parent(n);
  std::vector<bool> covered(n, false);
  std::vector<bool> visited(n, false);
  auto nearness = [&](VertexId v) {
    return std::make_pair(dist[v] < 0 ? std::numeric_limits<int>::max() : dist[v], v);
  };
  for (VertexId start = 0; start < n; ++start) {
    if (!in_forest[start] || visited[start]) continue;
    std::vector<VertexId> comp{start};
    visited[start] = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (auto u : adj[comp[i]]) {
        if (!visited[u]) {
          visited[u] = true;
          comp.push_back(u);
        }
      }
    }
    VertexId root = *std::min_element(comp.begin(), comp.end(), [&](VertexId a, VertexId b) {
      return nearness(a) < nearness(b);
    });
    covered[root] = true;
    parent[root] = root;
    std::vector<VertexId> order{root};
    std::vector<bool> placed(n, false);
    placed[root] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto u : adj[order[i]]) {
        if (!placed[u]) {
          placed[u] = true;
          parent[u] = order[i];
          order.push_back(u);
        }
      }
    }
  }

  for (VertexId leaf = 0; leaf < n; ++leaf) {
    if (adj[leaf].size() != 1 || covered[leaf]) continue;
    std::vector<VertexId> path{leaf};
    VertexId cur = leaf;
    do {
      cur = parent[cur];
      path.push_back(cur);
    } while (!covered[cur]);
    for (auto v : path) covered[v] = true;
    std::reverse(path.begin(), path.end());
    out.paths.push_back(std::move(path));
  }
  return out;
}

SolveResult solve_subforest(const Instance& inst, const std::vector<Edge>& subforest,
                            const SubforestOptions& options) {
  detail::Stopwatch clock;
  inst.validate();
  const auto& g = inst.graph;
  const auto& q = inst.query;
  if (auto why = subforest_problem(g, subforest)) throw NotApplicable("subforest: " + *why);
  auto decomposition = partition_forest_paths(g, subforest, q.source, q.sink);
  const auto& paths = decomposition.paths;
  if (paths.size() > options.max_paths) {
    throw CapabilityError("subforest decomposes into " + std::to_string(paths.size()) +
                          " paths (cap " + std::to_string(options.max_paths) + ")");
  }

  SolveResult res;
  res.solver = "subforest";
  const auto to_sink = bfs_distances(g, q.sink);
  if (to_sink[q.source] < 0) {
    res.stats.millis = clock.millis();
    return res;  // no walk can reach the sink
  }

  // Mixed-radix encoding of path progress.
  std::vector<std::uint32_t> radix(paths.size()), stride(paths.size());
  std::uint32_t progress_codes = 1;
  for (std::size_t j = 0; j < paths.size(); ++j) {
    radix[j] = static_cast<std::uint32_t>(paths[j].size());  // progress 0..len
    stride[j] = progress_codes;
    progress_codes *= radix[j];
  }
  // Subforest edge -> (path, index of the endpoint farther from v_0).
  std::map<Edge, std::pair<std::size_t, std::uint32_t>> edge_slot;
  for (std::size_t j = 0; j < paths.size(); ++j) {
    for (std::uint32_t i = 1; i < paths[j].size(); ++i) {
      edge_slot[Edge(paths[j][i - 1], paths[j][i])] = {j, i};
    }
  }
  std::set<Edge> on_anchor;
  for (std::size_t i = 1; i < decomposition.anchor_path.size(); ++i) {
    on_anchor.insert(Edge(decomposition.anchor_path[i - 1], decomposition.anchor_path[i]));
  }

  const std::uint32_t n = static_cast<std::uint32_t>(g.vertex_count());
  const std::uint32_t levels = q.k + 1;
  const TimeStep horizon = g.lifetime();
  auto id = [&](TimeStep t, std::uint32_t c, std::uint32_t code, VertexId v) {
    return ((t * levels + c) * progress_codes + code) * n + v;
  };
  const std::uint64_t node_total = std::uint64_t{horizon + 1} * levels * progress_codes * n;
  if (node_total >= (1ULL << 31)) {
    throw CapabilityError("subforest state space too large (" + std::to_string(node_total) + ")");
  }
  const auto sink_node = static_cast<std::uint32_t>(node_total);

  // Successor (counter, code) for a tuple, or nullopt when the arc is dropped.
  // The counter tracks 1 + distinct edges used: off-path edges outside the
  // subforest are counted when crossed toward the sink, anchor-path edges are
  // counted toward the sink and uncounted away from it, and subforest edges
  // are counted when they first extend their path's progress.
  auto step = [&](const CostTuple& t, std::uint32_t c,
                  std::uint32_t code) -> std::optional<std::pair<std::uint32_t, std::uint32_t>> {
    Edge e(t.from, t.to);
    if (auto it = edge_slot.find(e); it != edge_slot.end()) {
      auto [j, far_index] = it->second;
      std::uint32_t progress = (code / stride[j]) % radix[j];
      bool forward = paths[j][far_index] == t.to;
      if (forward && progress < far_index) {
        return std::make_pair(std::min(c + 1, q.k), code + (far_index - progress) * stride[j]);
      }
      return std::make_pair(c, code);
    }
    if (to_sink[t.from] < 0 || to_sink[t.to] < 0) return std::nullopt;
    bool toward = to_sink[t.to] < to_sink[t.from];
    if (toward) return std::make_pair(std::min(c + 1, q.k), code);
    if (on_anchor.count(e)) {
      if (c == 0) return std::nullopt;
      return std::make_pair(c - 1, code);
    }
    return std::make_pair(c, code);
  };

  auto by_tail = tuples_by_tail(g);
  Dag dag(static_cast<std::size_t>(sink_node) + 1);
  for (TimeStep t = 0; t <= horizon; ++t) {
    for (std::uint32_t c = 0; c < levels; ++c) {
      for (std::uint32_t code = 0; code < progress_codes; ++code) {
        for (VertexId v = 0; v < n; ++v) {
          auto tail = id(t, c, code, v);
          if (t < horizon) dag.add_arc(tail, id(t + 1, c, code, v), Cost::zero());
          for (auto tid : by_tail[t * n + v]) {
            const auto& tup = g.tuples()[tid];
            if (auto nxt = step(tup, c, code)) {
              dag.add_arc(tail, id(tup.arrive, nxt->first, nxt->second, tup.to), tup.cost, tid);
            }
          }
          if (v == q.sink && c == q.k) dag.add_arc(tail, sink_node, Cost::zero());
        }
      }
    }
  }
  dag.seal();

  auto path = dag_shortest_path(dag, id(0, std::min(1u, q.k), 0, q.source), sink_node);
  res.optimal_cost = path.cost;
  if (path.cost.is_finite()) res.witness = walk_from_tags(g, path.arc_tags);
  res.feasible = res.optimal_cost <= q.budget;
  res.stats.states = dag.node_count();
  res.stats.arcs = dag.arc_count();
  res.stats.millis = clock.millis();
  return res;
}

}  // namespace ccto
