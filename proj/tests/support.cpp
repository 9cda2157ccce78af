#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "ccto/tree_solvers.hpp"

namespace ccto::testing {

TemporalCostGraph i1_graph() {
  return TemporalCostGraph(3,
                           {{S, A, 1, 2, Cost(2)},
                            {A, B, 2, 3, Cost(4)},
                            {B, A, 4, 5, Cost(1)},
                            {A, S, 5, 6, Cost(1)}},
                           {"s", "a", "b"});
}

TemporalCostGraph i2_graph() {
  return TemporalCostGraph(3, {{S, A, 1, 2, Cost(2)}, {A, B, 2, 3, Cost(4)}}, {"s", "a", "b"});
}

TemporalCostGraph i3_graph() {
  return TemporalCostGraph(3, {{S, A, 1, 2, Cost(2)}, {A, B, 3, 4, Cost(1)}}, {"s", "a", "b"});
}

Instance i1(std::uint32_t k, std::uint64_t budget) { return {i1_graph(), {S, S, k, Cost(budget)}}; }

Instance i3(std::uint32_t k, std::uint64_t budget) { return {i3_graph(), {S, B, k, Cost(budget)}}; }

Walk w1() { return Walk{{{S, A, 1, 2}, {A, B, 2, 3}, {B, A, 4, 5}, {A, S, 5, 6}}}; }

void for_each_walk(const TemporalCostGraph& g, VertexId source,
                   const std::function<void(const Walk&)>& visit) {
  Walk w;
  std::function<void(VertexId, TimeStep)> go = [&](VertexId at, TimeStep now) {
    visit(w);
    for (const auto& t : g.tuples()) {
      if (t.from != at || t.depart < now) continue;
      w.steps.push_back(t.traversal());
      go(t.to, t.arrive);
      w.steps.pop_back();
    }
  };
  go(source, 0);
}

Cost brute_force_ccto(const Instance& inst) {
  Cost best = Cost::infinite();
  const auto& q = inst.query;
  for_each_walk(inst.graph, q.source, [&](const Walk& w) {
    VertexId end = w.empty() ? q.source : w.steps.back().to;
    if (end != q.sink) return;
    std::set<VertexId> seen{q.source};
    Cost c = Cost::zero();
    for (const auto& s : w.steps) {
      seen.insert(s.to);
      c += inst.graph.cost(s);
    }
    if (seen.size() >= q.k) best = min(best, c);
  });
  return best;
}

std::vector<std::uint64_t> brute_force_bags(const TemporalCostGraph& g) {
  std::vector<std::uint64_t> bags(g.lifetime() + 1, 0);
  for (TimeStep t = 0; t <= g.lifetime(); ++t) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      bool in = false, out = false;
      for (const auto& x : g.tuples()) {
        if (x.to == v && x.arrive <= t) in = true;
        if (x.from == v && x.depart >= t) out = true;
      }
      if (in && out) bags[t] |= std::uint64_t{1} << v;
    }
  }
  return bags;
}

bool starexp_brute_force(const TemporalStar& star) {
  std::vector<std::size_t> order(star.leaves());
  std::iota(order.begin(), order.end(), 0);
  do {
    // every (enter, leave) label pair, leaf by leaf
    std::function<bool(std::size_t, long)> fits = [&](std::size_t j, long last) {
      if (j == order.size()) return true;
      const auto& labels = star.labels[order[j]];
      for (auto a : labels) {
        if (static_cast<long>(a) <= last) continue;
        for (auto b : labels) {
          if (b > a && fits(j + 1, b)) return true;
        }
      }
      return false;
    };
    if (fits(0, -1)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

Instance random_small(std::mt19937_64& rng, std::size_t max_n, TimeStep max_t, bool tree,
                      double density, std::uint64_t max_cost) {
  RandomSpec spec;
  spec.seed = rng();
  spec.n = std::uniform_int_distribution<std::size_t>(2, max_n)(rng);
  spec.horizon = std::uniform_int_distribution<TimeStep>(1, max_t)(rng);
  spec.density = density;
  spec.max_cost = max_cost;
  spec.shape = tree ? Shape::tree : Shape::general;
  return random_instance(spec);
}

Instance random_low_traversal_tree(std::mt19937_64& rng, std::size_t max_n, TimeStep max_t) {
  for (;;) {
    auto inst = random_small(rng, max_n, max_t, true, 0.15);
    if (!subforest_problem(inst.graph, {})) return inst;
  }
}

Instance random_sparse_triples(std::mt19937_64& rng, std::size_t max_n, TimeStep max_t) {
  auto base = random_small(rng, max_n, max_t, false, 0.2);
  std::vector<CostTuple> pool(base.graph.tuples().begin(), base.graph.tuples().end());
  std::shuffle(pool.begin(), pool.end(), rng);
  std::map<VertexId, std::set<std::tuple<VertexId, TimeStep, TimeStep>>> triples;
  std::vector<CostTuple> kept;
  for (const auto& t : pool) {
    auto a = triples[t.from], b = triples[t.to];
    a.emplace(t.to, t.depart, t.arrive);
    b.emplace(t.from, t.depart, t.arrive);
    if (a.size() > 3 || b.size() > 3) continue;
    triples[t.from] = a;
    triples[t.to] = b;
    kept.push_back(t);
  }
  Instance inst{TemporalCostGraph(base.graph.vertex_count(), kept), base.query};
  return inst;
}

}  // namespace ccto::testing
