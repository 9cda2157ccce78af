#include "ccto/oracle.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "ccto/detail/timer.hpp"
#include "ccto/errors.hpp"

namespace ccto {

namespace {

struct Label {
  VertexId at;
  TimeStep time;
  std::uint32_t visited;
  Cost cost;
  std::int64_t pred;   // index into labels, -1 for the start
  std::uint32_t tuple;
};

}  // namespace

SolveResult solve_exact(const Instance& inst, const OracleLimits& limits) {
  detail::Stopwatch clock;
  inst.validate();
  const auto& g = inst.graph;
  const auto& q = inst.query;
  const std::size_t n = g.vertex_count();
  if (n > limits.max_vertices || n > 32) {
    throw CapabilityError("oracle supports at most " +
                          std::to_string(std::min<std::size_t>(limits.max_vertices, 32)) +
                          " vertices (instance has " + std::to_string(n) + ")");
  }
  const TimeStep horizon = g.lifetime();

  std::vector<Label> labels;
  std::vector<std::unordered_map<std::uint64_t, std::size_t>> layer(horizon + 1);
  auto key = [](VertexId v, std::uint32_t s) { return (std::uint64_t{s} << 32) | v; };

  labels.push_back({q.source, 0, 1u << q.source, Cost::zero(), -1, 0});
  layer[0].emplace(key(q.source, 1u << q.source), 0);

  SolveResult res;
  res.solver = "oracle";
  std::int64_t best = -1;
  auto consider = [&](std::size_t id) {
    const auto& l = labels[id];
    if (l.at != q.sink || static_cast<std::uint32_t>(std::popcount(l.visited)) < q.k) return;
    if (best < 0 || l.cost < labels[best].cost) best = static_cast<std::int64_t>(id);
  };

  for (TimeStep t = 0; t <= horizon; ++t) {
    // Ids at this layer in creation order; labels only grow at later layers.
    std::vector<std::size_t> ids;
    ids.reserve(layer[t].size());
    for (const auto& [_, id] : layer[t]) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    res.stats.max_live_states = std::max<std::uint64_t>(res.stats.max_live_states, ids.size());
    for (auto id : ids) {
      consider(id);
      const Label cur = labels[id];
      auto out = g.outgoing(cur.at);
      auto it = std::lower_bound(out.begin(), out.end(), cur.time, [&](std::uint32_t tid, TimeStep tt) {
        return g.tuples()[tid].depart < tt;
      });
      for (; it != out.end(); ++it) {
        const auto& tup = g.tuples()[*it];
        ++res.stats.arcs;
        std::uint32_t visited = cur.visited | (1u << tup.to);
        Cost c = cur.cost + tup.cost;
        auto [slot, inserted] = layer[tup.arrive].try_emplace(key(tup.to, visited), labels.size());
        if (inserted) {
          labels.push_back({tup.to, tup.arrive, visited, c, static_cast<std::int64_t>(id), *it});
        } else if (c < labels[slot->second].cost) {
          auto& l = labels[slot->second];
          l.cost = c;
          l.pred = static_cast<std::int64_t>(id);
          l.tuple = *it;
        }
      }
    }
  }
  res.stats.states = labels.size();

  if (best >= 0) {
    res.optimal_cost = labels[best].cost;
    Walk w;
    for (auto id = best; labels[id].pred >= 0; id = labels[id].pred) {
      w.steps.push_back(g.tuples()[labels[id].tuple].traversal());
    }
    std::reverse(w.steps.begin(), w.steps.end());
    res.witness = std::move(w);
  }
  res.feasible = res.optimal_cost <= q.budget;
  res.stats.millis = clock.millis();
  return res;
}

Cost min_cost_walk_oracle(const TemporalCostGraph& g, VertexId u, VertexId v, TimeStep depart,
                          TimeStep arrive, const OracleLimits& limits) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (g.vertex_count() > limits.max_walk_vertices || g.lifetime() > limits.max_walk_lifetime) {
    throw CapabilityError("walk oracle limited to n <= " +
                          std::to_string(limits.max_walk_vertices) + " and T <= " +
                          std::to_string(limits.max_walk_lifetime));
  }
  if (depart > arrive) return Cost::infinite();
  if (u == v) return Cost::zero();

  Cost best = Cost::infinite();
  // Positive costs make the bound prune sound.
  auto dfs = [&](auto&& self, VertexId at, TimeStep now, Cost spent) -> void {
    for (auto id : g.outgoing(at)) {
      const auto& t = g.tuples()[id];
      if (t.depart < now || t.arrive > arrive) continue;
      Cost c = spent + t.cost;
      if (c >= best) continue;
      if (t.to == v && t.arrive == arrive) best = c;
      self(self, t.to, t.arrive, c);
    }
  };
  dfs(dfs, u, depart, Cost::zero());
  return best;
}

}  // namespace ccto
