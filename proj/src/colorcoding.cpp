#include "ccto/colorcoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ccto/detail/timer.hpp"
#include "ccto/errors.hpp"

namespace ccto {

namespace {

bool may_pass(const std::optional<VertexSet>& allowed, VertexId u, VertexId v) {
  return v == u || !allowed || (*allowed)[v];
}

void check_restriction(const TemporalCostGraph& g, const std::optional<VertexSet>& allowed) {
  if (allowed && allowed->size() != g.vertex_count()) {
    throw UsageError("restrict_to has " + std::to_string(allowed->size()) + " entries, expected " +
                     std::to_string(g.vertex_count()));
  }
}

std::vector<std::vector<std::uint32_t>> tuples_by_arrival(const TemporalCostGraph& g) {
  std::vector<std::vector<std::uint32_t>> out(g.lifetime() + 1);
  for (std::uint32_t i = 0; i < g.tuples().size(); ++i) out[g.tuples()[i].arrive].push_back(i);
  return out;
}

void fill_from_source(const TemporalCostGraph& g, const std::optional<VertexSet>& allowed,
                      const std::vector<std::vector<std::uint32_t>>& by_arrival, VertexId u,
                      MinWalkTable& table) {
  const std::size_t n = g.vertex_count();
  const TimeStep horizon = g.lifetime();
  // present[v * (T+1) + t]: cheapest way to be at v at some time <= t.
  std::vector<Cost> present(n * (horizon + 1));
  for (TimeStep t1 = 0; t1 <= horizon; ++t1) {
    std::fill(present.begin(), present.end(), Cost::infinite());
    for (TimeStep t = t1; t <= horizon; ++t) {
      table.at(u, u, t1, t) = Cost::zero();
      present[u * (horizon + 1) + t] = Cost::zero();
    }
    for (TimeStep i = t1 + 1; i <= horizon; ++i) {
      for (auto tid : by_arrival[i]) {
        const auto& tup = g.tuples()[tid];
        if (tup.depart < t1 || tup.to == u || !may_pass(allowed, u, tup.from)) continue;
        auto c = present[tup.from * (horizon + 1) + tup.depart] + tup.cost;
        auto& cell = table.at(u, tup.to, t1, i);
        cell = min(cell, c);
      }
      for (VertexId v = 0; v < n; ++v) {
        if (v == u) continue;
        present[v * (horizon + 1) + i] =
            min(present[v * (horizon + 1) + i - 1], table.at(u, v, t1, i));
      }
    }
  }
}

}  // namespace

MinWalkTable all_pairs_min_walk(const TemporalCostGraph& g,
                                const std::optional<VertexSet>& restrict_to) {
  check_restriction(g, restrict_to);
  MinWalkTable table(g.vertex_count(), g.lifetime());
  const auto by_arrival = tuples_by_arrival(g);
  const auto n = static_cast<std::int64_t>(g.vertex_count());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t u = 0; u < n; ++u) {
    fill_from_source(g, restrict_to, by_arrival, static_cast<VertexId>(u), table);
  }
  return table;
}

MinWalkTable all_pairs_min_walk_serial(const TemporalCostGraph& g,
                                       const std::optional<VertexSet>& restrict_to) {
  check_restriction(g, restrict_to);
  const std::size_t n = g.vertex_count();
  const TimeStep horizon = g.lifetime();
  MinWalkTable table(n, horizon);
  for (VertexId u = 0; u < n; ++u) {
    for (TimeStep t1 = 0; t1 <= horizon; ++t1) {
      for (TimeStep i = t1; i <= horizon; ++i) {
        table.at(u, u, t1, i) = Cost::zero();
        for (VertexId v = 0; v < n; ++v) {
          if (v == u) continue;
          Cost best = Cost::infinite();
          for (auto tid : g.incoming(v)) {
            const auto& tup = g.tuples()[tid];
            if (tup.arrive != i || tup.depart < t1 || !may_pass(restrict_to, u, tup.from)) continue;
            for (TimeStep tp = t1; tp <= tup.depart; ++tp) {
              best = min(best, table.at(u, tup.from, t1, tp) + tup.cost);
            }
          }
          table.at(u, v, t1, i) = best;
        }
      }
    }
  }
  return table;
}

Walk trace_min_walk(const TemporalCostGraph& g, const MinWalkTable& table,
                    const std::optional<VertexSet>& restrict_to, VertexId u, VertexId v,
                    TimeStep t1, TimeStep t2) {
  Walk w;
  Cost need = table.at(u, v, t1, t2);
  if (need.is_infinite()) throw UsageError("trace_min_walk on an infinite entry");
  while (v != u) {
    bool moved = false;
    for (auto tid : g.incoming(v)) {
      const auto& tup = g.tuples()[tid];
      if (tup.arrive != t2 || tup.depart < t1 || !may_pass(restrict_to, u, tup.from)) continue;
      if (tup.cost > need) continue;
      for (TimeStep tp = t1; tp <= tup.depart && !moved; ++tp) {
        auto prev = table.at(u, tup.from, t1, tp);
        if (prev.is_finite() && prev + tup.cost == need) {
          w.steps.push_back(tup.traversal());
          v = tup.from;
          t2 = tp;
          need = prev;
          moved = true;
        }
      }
      if (moved) break;
    }
    if (!moved) throw std::logic_error("min-walk table is inconsistent with the graph");
  }
  std::reverse(w.steps.begin(), w.steps.end());
  return w;
}

namespace {

/// F̂ tables keyed by the set of colours whose vertices may be passed
/// through; `extra` vertices are always passable. Key ~0 is unrestricted.
class TableCache {
 public:
  TableCache(const TemporalCostGraph& g, const Colouring& c, VertexSet extra)
      : g_(g), colouring_(c), extra_(std::move(extra)) {}

  static constexpr std::uint64_t kAll = ~std::uint64_t{0};

  struct Entry {
    MinWalkTable table;
    std::optional<VertexSet> allowed;
  };

  const Entry& get(std::uint64_t colours) {
    auto it = cache_.find(colours);
    if (it != cache_.end()) return it->second;
    Entry e;
    if (colours != kAll) {
      VertexSet allowed = extra_;
      for (VertexId v = 0; v < g_.vertex_count(); ++v) {
        if ((colours >> colouring_.colour[v]) & 1U) allowed[v] = true;
      }
      e.allowed = std::move(allowed);
    }
    e.table = all_pairs_min_walk(g_, e.allowed);
    return cache_.emplace(colours, std::move(e)).first->second;
  }

 private:
  const TemporalCostGraph& g_;
  const Colouring& colouring_;
  VertexSet extra_;
  std::map<std::uint64_t, Entry> cache_;
};

struct Back {
  VertexId from = 0;
  TimeStep depart = 0;  // leg start time at `from`
  TimeStep arrive = 0;  // exact arrival of the leg
};

/// Colour-order DP. With `terminal`, one further unrestricted leg must reach
/// it by time T.
OrderedWalk ordered_core(const TemporalCostGraph& g, const Colouring& colouring,
                         const ColourOrder& order, std::optional<VertexId> terminal,
                         TableCache& cache) {
  const std::size_t n = g.vertex_count();
  const TimeStep horizon = g.lifetime();
  const std::size_t width = horizon + 1;
  std::vector<std::vector<VertexId>> cls(colouring.palette);
  for (VertexId v = 0; v < n; ++v) cls[colouring.colour[v]].push_back(v);
  const VertexId source = cls[0].front();

  // best[i][v * width + t] = F* for level i; back records the leg into v.
  std::vector<std::vector<Cost>> best(order.size(), std::vector<Cost>(n * width, Cost::infinite()));
  std::vector<std::vector<Back>> back(order.size(), std::vector<Back>(n * width));
  for (TimeStep t = 0; t <= horizon; ++t) best[0][source * width + t] = Cost::zero();

  std::uint64_t prefix = 1;  // colour 0
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& tab = cache.get(prefix).table;
    for (auto v : cls[order[i]]) {
      Cost running = Cost::infinite();
      Back running_back;
      for (TimeStep t2 = 0; t2 <= horizon; ++t2) {
        for (auto w : cls[order[i - 1]]) {
          for (TimeStep t1 = 0; t1 < t2; ++t1) {
            auto a = best[i - 1][w * width + t1];
            if (a.is_infinite()) continue;
            auto c = a + tab.at(w, v, t1, t2);
            if (c < running) {
              running = c;
              running_back = {w, t1, t2};
            }
          }
        }
        best[i][v * width + t2] = running;
        back[i][v * width + t2] = running_back;
      }
    }
    prefix |= std::uint64_t{1} << order[i];
  }

  const std::size_t last = order.size() - 1;
  OrderedWalk out;
  Back final_leg;
  VertexId end = 0;
  if (!terminal) {
    for (auto v : cls[order[last]]) {
      if (best[last][v * width + horizon] < out.cost) {
        out.cost = best[last][v * width + horizon];
        end = v;
      }
    }
  } else {
    const auto& all = cache.get(TableCache::kAll).table;
    for (auto w : cls[order[last]]) {
      for (TimeStep t1 = 0; t1 <= horizon; ++t1) {
        auto a = best[last][w * width + t1];
        if (a.is_infinite()) continue;
        for (TimeStep t2 = t1; t2 <= horizon; ++t2) {
          auto c = a + all.at(w, *terminal, t1, t2);
          if (c < out.cost) {
            out.cost = c;
            final_leg = {w, t1, t2};
          }
        }
      }
    }
    end = final_leg.from;
  }
  if (out.cost.is_infinite()) return out;

  std::vector<Walk> legs;
  if (terminal) {
    legs.push_back(trace_min_walk(g, cache.get(TableCache::kAll).table, std::nullopt,
                                  final_leg.from, *terminal, final_leg.depart, final_leg.arrive));
  }
  TimeStep by = terminal ? final_leg.depart : horizon;
  std::uint64_t masks = prefix;
  VertexId at = end;
  for (std::size_t i = last; i >= 1; --i) {
    masks &= ~(std::uint64_t{1} << order[i]);
    const auto& b = back[i][at * width + by];
    const auto& entry = cache.get(masks);
    legs.push_back(trace_min_walk(g, entry.table, entry.allowed, b.from, at, b.depart, b.arrive));
    at = b.from;
    by = b.depart;
  }
  Walk w;
  for (auto it = legs.rbegin(); it != legs.rend(); ++it) {
    w.steps.insert(w.steps.end(), it->steps.begin(), it->steps.end());
  }
  out.walk = std::move(w);
  return out;
}

std::uint64_t factorial(std::uint32_t m) {
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= m; ++i) f *= i;
  return f;
}

SolveResult infeasible(std::string solver) {
  SolveResult r;
  r.solver = std::move(solver);
  return r;
}

void verify(const Instance& inst, const SolveResult& r) {
  if (!r.witness) return;
  if (auto problem = witness_problem(inst, *r.witness, r.optimal_cost)) {
    throw std::logic_error("colour coding produced a bad witness: " + *problem);
  }
}

}  // namespace

OrderedWalk ordered_walk_min(const TemporalCostGraph& g, const Colouring& colouring,
                             const ColourOrder& order) {
  const std::size_t n = g.vertex_count();
  if (colouring.colour.size() != n) throw UsageError("colouring must cover every vertex");
  if (colouring.palette == 0 || colouring.palette > 63) {
    throw UsageError("palette size must be in 1..63");
  }
  std::size_t zeros = 0;
  for (auto c : colouring.colour) {
    if (c >= colouring.palette) throw UsageError("colour " + std::to_string(c) + " outside palette");
    zeros += c == 0;
  }
  if (zeros != 1) throw UsageError("colour 0 must be exactly the start vertex");
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint32_t> expect(colouring.palette);
  std::iota(expect.begin(), expect.end(), 0U);
  if (order.empty() || order.front() != 0 || sorted != expect) {
    throw UsageError("order must be a permutation of the palette starting with 0");
  }
  TableCache cache(g, colouring, VertexSet(n, false));
  return ordered_core(g, colouring, order, std::nullopt, cache);
}

std::uint32_t inner_colour_count(const Query& q) {
  if (q.source == q.sink) return q.k - 1;
  return q.k >= 2 ? q.k - 2 : 0;
}

std::uint64_t derived_trial_count(std::uint32_t inner_colours, double delta) {
  if (inner_colours <= 1) return 1;  // a single colour is always colourful
  if (!(delta > 0 && delta < 1)) throw UsageError("delta must lie in (0,1)");
  return static_cast<std::uint64_t>(
      std::ceil(std::exp(static_cast<double>(inner_colours)) * std::log(1.0 / delta)));
}

std::uint64_t exhaustive_colouring_count(const Instance& inst) {
  const auto m = inner_colour_count(inst.query);
  const std::size_t inner =
      inst.graph.vertex_count() - (inst.query.source == inst.query.sink ? 1 : 2);
  if (m <= 1) return 1;
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < inner; ++i) {
    if (c > std::numeric_limits<std::uint64_t>::max() / m) return std::numeric_limits<std::uint64_t>::max();
    c *= m;
  }
  return c;
}

SolveResult solve_colourful(const Instance& inst, const Colouring& inner) {
  detail::Stopwatch clock;
  inst.validate();
  const auto& g = inst.graph;
  const auto& q = inst.query;
  const std::size_t n = g.vertex_count();
  const bool closed = q.source == q.sink;
  SolveResult res;
  res.solver = "colourful";
  if (q.k > n) return res;
  const std::uint32_t m = inner_colour_count(q);

  if (m == 0) {
    // Only the endpoints matter: a direct F̂ query.
    auto table = all_pairs_min_walk(g);
    TimeStep arrive = 0;
    for (TimeStep t = 0; t <= g.lifetime(); ++t) {
      if (table.at(q.source, q.sink, 0, t) < res.optimal_cost) {
        res.optimal_cost = table.at(q.source, q.sink, 0, t);
        arrive = t;
      }
    }
    if (res.optimal_cost.is_finite()) {
      res.witness = trace_min_walk(g, table, std::nullopt, q.source, q.sink, 0, arrive);
    }
    res.stats.permutations = 1;
    res.feasible = res.optimal_cost <= q.budget;
    res.stats.millis = clock.millis();
    return res;
  }
  if (m + 2 > 63) throw CapabilityError("colour coding supports at most 61 inner colours");
  if (inner.colour.size() != n) throw UsageError("colouring must cover every vertex");

  Colouring full;
  full.palette = m + 2;  // colour m+1 marks the sink and is never ordered
  full.colour.assign(n, 0);
  std::vector<std::size_t> class_size(m + 1, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (v == q.source) continue;
    if (v == q.sink) {
      full.colour[v] = m + 1;
      continue;
    }
    auto c = inner.colour[v];
    if (c < 1 || c > m) {
      throw UsageError("vertex " + g.vertex_name(v) + " has colour " + std::to_string(c) +
                       ", expected 1.." + std::to_string(m));
    }
    full.colour[v] = c;
    ++class_size[c];
  }
  for (std::uint32_t c = 1; c <= m; ++c) {
    if (class_size[c] == 0) {
      res.stats.millis = clock.millis();
      return res;  // no colourful walk exists
    }
  }

  VertexSet extra(n, false);
  if (!closed) extra[q.sink] = true;
  TableCache cache(g, full, extra);
  ColourOrder order(m + 1);
  std::iota(order.begin(), order.end(), 0U);
  do {
    ++res.stats.permutations;
    auto r = ordered_core(g, full, order, q.sink, cache);
    if (r.cost < res.optimal_cost) {
      res.optimal_cost = r.cost;
      res.witness = std::move(r.walk);
    }
  } while (std::next_permutation(order.begin() + 1, order.end()));
  res.feasible = res.optimal_cost <= q.budget;
  res.stats.millis = clock.millis();
  return res;
}

SolveResult solve_color_coding(const Instance& inst, const ColorCodingOptions& options) {
  detail::Stopwatch clock;
  inst.validate();
  const auto& q = inst.query;
  const std::size_t n = inst.graph.vertex_count();
  const bool randomized = options.mode == ColourMode::randomized;
  const std::string name = randomized ? "colorcoding-randomized" : "colorcoding-exhaustive";
  if (q.k > n) return infeasible(name);

  const std::uint32_t m = inner_colour_count(q);
  std::vector<VertexId> inner;
  for (VertexId v = 0; v < n; ++v) {
    if (v != q.source && v != q.sink) inner.push_back(v);
  }
  if (m <= 1) {
    // At most one inner colour: the single colouring is exact.
    Colouring c{std::vector<std::uint32_t>(n, 1), 2};
    auto r = solve_colourful(inst, c);
    r.solver = name;
    r.stats.trials = 1;
    verify(inst, r);
    r.stats.millis = clock.millis();
    return r;
  }

  std::uint64_t cells = 0;
  if (randomized) {
    cells = options.trials ? options.trials : derived_trial_count(m, options.delta);
  } else {
    cells = exhaustive_colouring_count(inst);
    if (cells > options.max_colourings) {
      throw CapabilityError("exhaustive colour coding needs " + std::to_string(cells) +
                            " colourings (cap " + std::to_string(options.max_colourings) + ")");
    }
  }

  auto colouring_for = [&](std::uint64_t cell) {
    Colouring c{std::vector<std::uint32_t>(n, 1), m + 1};
    if (randomized) {
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                        static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(cell), static_cast<std::uint32_t>(cell >> 32)};
      std::mt19937_64 rng(seq);
      std::uniform_int_distribution<std::uint32_t> pick(1, m);
      for (auto v : inner) c.colour[v] = pick(rng);
    } else {
      for (auto v : inner) {
        c.colour[v] = 1 + static_cast<std::uint32_t>(cell % m);
        cell /= m;
      }
    }
    return c;
  };

  SolveResult res = infeasible(name);
  res.cost_status = randomized ? CostStatus::upper_bound : CostStatus::exact;
  if (inner.size() < m) {
    res.stats.millis = clock.millis();
    return res;  // too few vertices for every colour
  }

  std::vector<SolveResult> found(cells);
  std::vector<char> ran(cells, 0);
  const auto total = static_cast<std::int64_t>(cells);
#pragma omp parallel for schedule(dynamic) if (options.parallel)
  for (std::int64_t cell = 0; cell < total; ++cell) {
    auto c = colouring_for(static_cast<std::uint64_t>(cell));
    if (!randomized) {
      std::vector<char> seen(m + 1, 0);
      for (auto v : inner) seen[c.colour[v]] = 1;
      if (std::count(seen.begin() + 1, seen.end(), 1) != static_cast<std::ptrdiff_t>(m)) continue;
    }
    found[cell] = solve_colourful(inst, c);
    ran[cell] = 1;
  }

  for (std::uint64_t cell = 0; cell < cells; ++cell) {
    if (!ran[cell]) continue;
    ++res.stats.trials;
    res.stats.permutations += found[cell].stats.permutations;
    if (found[cell].optimal_cost < res.optimal_cost) {
      res.optimal_cost = found[cell].optimal_cost;
      res.witness = std::move(found[cell].witness);
    }
  }
  res.feasible = res.optimal_cost <= q.budget;
  if (randomized && !res.feasible) {
    double hit = static_cast<double>(factorial(std::min<std::uint32_t>(m, 20)));
    hit /= std::pow(static_cast<double>(m), static_cast<double>(m));
    res.failure_probability = m > 20 ? 1.0 : std::pow(1.0 - hit, static_cast<double>(cells));
  }
  verify(inst, res);
  res.stats.millis = clock.millis();
  return res;
}

}  // namespace ccto
