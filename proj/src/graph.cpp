#include "ccto/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "ccto/errors.hpp"

namespace ccto {

namespace {

void build_csr(std::size_t n, const std::vector<std::pair<VertexId, std::uint32_t>>& pairs,
               std::vector<std::uint32_t>& offsets, std::vector<std::uint32_t>& ids) {
  offsets.assign(n + 1, 0);
  for (const auto& [v, _] : pairs) ++offsets[v + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  ids.resize(pairs.size());
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [v, id] : pairs) ids[cursor[v]++] = id;
}

}  // namespace

std::size_t TemporalCostGraph::KeyHash::operator()(const Traversal& t) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t x : {std::uint64_t{t.from}, std::uint64_t{t.to}, std::uint64_t{t.depart},
                          std::uint64_t{t.arrive}}) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

TemporalCostGraph::TemporalCostGraph(std::size_t n, std::vector<CostTuple> tuples,
                                     std::vector<std::string> names)
    : n_(n), tuples_(std::move(tuples)), names_(std::move(names)) {
  if (!names_.empty() && names_.size() != n_) {
    throw UsageError("name table has " + std::to_string(names_.size()) + " entries for " +
                     std::to_string(n_) + " vertices");
  }
  for (const auto& t : tuples_) {
    if (t.from >= n_ || t.to >= n_) throw UsageError("tuple references vertex out of range");
    if (t.from == t.to) throw UsageError("tuple endpoints must differ");
    if (t.depart >= t.arrive) throw UsageError("depart must precede arrive");
    if (t.cost.is_infinite()) throw UsageError("stored cost must be finite");
    if (t.cost.value() == 0) throw UsageError("cross-vertex cost must be positive");
  }
  std::sort(tuples_.begin(), tuples_.end(), [](const CostTuple& a, const CostTuple& b) {
    return std::tie(a.from, a.depart, a.arrive, a.to) < std::tie(b.from, b.depart, b.arrive, b.to);
  });
  index_.reserve(tuples_.size());
  for (std::uint32_t i = 0; i < tuples_.size(); ++i) {
    if (!index_.emplace(tuples_[i].traversal(), i).second) {
      const auto& t = tuples_[i];
      throw UsageError("duplicate tuple " + std::to_string(t.from) + " " + std::to_string(t.to) +
                       " " + std::to_string(t.depart) + " " + std::to_string(t.arrive));
    }
    lifetime_ = std::max(lifetime_, tuples_[i].arrive);
  }

  std::vector<std::pair<VertexId, std::uint32_t>> out, in;
  for (std::uint32_t i = 0; i < tuples_.size(); ++i) out.emplace_back(tuples_[i].from, i);
  build_csr(n_, out, out_offsets_, out_ids_);
  std::vector<std::uint32_t> by_arrival(tuples_.size());
  std::iota(by_arrival.begin(), by_arrival.end(), 0u);
  std::stable_sort(by_arrival.begin(), by_arrival.end(), [&](std::uint32_t a, std::uint32_t b) {
    return tuples_[a].arrive < tuples_[b].arrive;
  });
  for (auto i : by_arrival) in.emplace_back(tuples_[i].to, i);
  build_csr(n_, in, in_offsets_, in_ids_);

  for (const auto& t : tuples_) edges_.emplace_back(t.from, t.to);
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  std::vector<std::pair<VertexId, std::uint32_t>> adj;
  for (const auto& e : edges_) {
    adj.emplace_back(e.lo, e.hi);
    adj.emplace_back(e.hi, e.lo);
  }
  build_csr(n_, adj, adj_offsets_, adj_);
}

void TemporalCostGraph::check_vertex(VertexId v) const {
  if (v >= n_) {
    throw UsageError("vertex id " + std::to_string(v) + " out of range (n=" + std::to_string(n_) +
                     ")");
  }
}

Cost TemporalCostGraph::cost(VertexId from, VertexId to, TimeStep depart, TimeStep arrive) const {
  check_vertex(from);
  check_vertex(to);
  if (depart >= arrive) return Cost::infinite();
  if (from == to) return Cost::zero();
  auto it = index_.find(Traversal{from, to, depart, arrive});
  return it == index_.end() ? Cost::infinite() : tuples_[it->second].cost;
}

std::optional<std::size_t> TemporalCostGraph::find(const Traversal& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::uint32_t> TemporalCostGraph::outgoing(VertexId v) const {
  check_vertex(v);
  return {out_ids_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const std::uint32_t> TemporalCostGraph::incoming(VertexId v) const {
  check_vertex(v);
  return {in_ids_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::span<const VertexId> TemporalCostGraph::neighbours(VertexId v) const {
  check_vertex(v);
  return {adj_.data() + adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]};
}

bool TemporalCostGraph::has_edge(VertexId a, VertexId b) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
}

std::string TemporalCostGraph::vertex_name(VertexId v) const {
  if (v < names_.size() && !names_[v].empty()) return names_[v];
  return std::to_string(v);
}

bool TemporalCostGraph::is_connected() const {
  if (n_ <= 1) return true;
  auto d = bfs_distances(*this, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::size_t max_traversal_number(const TemporalCostGraph& g, Edge e) {
  if (!g.has_edge(e.lo, e.hi)) {
    throw UsageError("{" + g.vertex_name(e.lo) + "," + g.vertex_name(e.hi) + "} is not an edge");
  }
  std::vector<std::pair<TimeStep, TimeStep>> windows;  // (arrive, depart)
  for (VertexId end : {e.lo, e.hi}) {
    VertexId other = end == e.lo ? e.hi : e.lo;
    for (auto id : g.outgoing(end)) {
      const auto& t = g.tuples()[id];
      if (t.to == other) windows.emplace_back(t.arrive, t.depart);
    }
  }
  // Interval scheduling with touching endpoints allowed: earliest arrival first.
  std::sort(windows.begin(), windows.end());
  std::size_t chain = 0;
  TimeStep free_at = 0;
  for (const auto& [arrive, depart] : windows) {
    if (chain == 0 || depart >= free_at) {
      ++chain;
      free_at = arrive;
    }
  }
  return chain;
}

ValidationReport validate_walk(const TemporalCostGraph& g, const Walk& w, VertexId anchor) {
  auto fail = [](std::size_t i, std::string why) { return ValidationReport{false, i, std::move(why)}; };
  if (anchor >= g.vertex_count()) return fail(0, "anchor out of range");
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    const auto& s = w.steps[i];
    if (s.from >= g.vertex_count() || s.to >= g.vertex_count()) {
      return fail(i, "vertex out of range");
    }
    if (i == 0 && s.from != anchor) return fail(i, "walk does not start at anchor");
    if (i > 0) {
      const auto& prev = w.steps[i - 1];
      if (prev.to != s.from) return fail(i, "chain break: previous step ends elsewhere");
      if (prev.arrive > s.depart) return fail(i, "departs before previous arrival");
    }
    if (s.depart >= s.arrive) return fail(i, "depart must precede arrive");
    if (g.cost(s).is_infinite()) return fail(i, "step has infinite cost");
  }
  return {};
}

Cost walk_cost(const TemporalCostGraph& g, const Walk& w) {
  if (w.empty()) return Cost::zero();
  auto report = validate_walk(g, w, w.steps.front().from);
  if (!report) throw UsageError("invalid walk: " + report.reason);
  Cost total;
  for (const auto& s : w.steps) total += g.cost(s);
  return total;
}

std::size_t distinct_vertices(const Walk& w, VertexId anchor) {
  std::vector<VertexId> seen{anchor};
  for (const auto& s : w.steps) {
    if (s.is_wait()) continue;
    seen.push_back(s.from);
    seen.push_back(s.to);
  }
  std::sort(seen.begin(), seen.end());
  return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

void Instance::validate() const {
  graph.check_vertex(query.source);
  graph.check_vertex(query.sink);
  if (query.k == 0) throw UsageError("k must be positive");
  if (query.budget.is_infinite()) throw UsageError("budget must be finite");
}

std::optional<std::string> witness_problem(const Instance& inst, const Walk& w, Cost expected) {
  const auto& q = inst.query;
  auto report = validate_walk(inst.graph, w, q.source);
  if (!report) return "invalid walk at step " + std::to_string(*report.step) + ": " + report.reason;
  VertexId end = w.empty() ? q.source : w.steps.back().to;
  if (end != q.sink) return "walk ends at " + inst.graph.vertex_name(end) + ", not the sink";
  if (distinct_vertices(w, q.source) < q.k) return "walk visits fewer than k distinct vertices";
  Cost c = walk_cost(inst.graph, w);
  if (c != expected) return "walk cost " + c.to_string() + " != reported " + expected.to_string();
  return std::nullopt;
}

bool is_forest(const TemporalCostGraph& g) {
  std::vector<VertexId> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0u);
  auto root = [&](VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : g.edges()) {
    auto a = root(e.lo), b = root(e.hi);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::vector<int> bfs_distances(const TemporalCostGraph& g, VertexId root) {
  g.check_vertex(root);
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<VertexId> frontier;
  dist[root] = 0;
  frontier.push(root);
  while (!frontier.empty()) {
    auto v = frontier.front();
    frontier.pop();
    for (auto u : g.neighbours(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        frontier.push(u);
      }
    }
  }
  return dist;
}

std::vector<VertexId> forest_path(const TemporalCostGraph& g, VertexId a, VertexId b) {
  auto dist = bfs_distances(g, b);
  if (dist[a] < 0) return {};
  std::vector<VertexId> path{a};
  while (path.back() != b) {
    auto v = path.back();
    for (auto u : g.neighbours(v)) {
      if (dist[u] == dist[v] - 1) {
        path.push_back(u);
        break;
      }
    }
  }
  return path;
}

}  // namespace ccto
