#include "ccto/vitw.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <unordered_map>

#include "ccto/detail/timer.hpp"
#include "ccto/errors.hpp"

namespace ccto {

namespace {

constexpr TimeStep kNever = std::numeric_limits<TimeStep>::max();

struct Interval {
  TimeStep first = kNever;  // earliest arrival
  TimeStep last = 0;        // latest departure
  bool has_departure = false;
};

std::vector<Interval> membership(const TemporalCostGraph& g) {
  std::vector<Interval> iv(g.vertex_count());
  for (const auto& t : g.tuples()) {
    iv[t.to].first = std::min(iv[t.to].first, t.arrive);
    iv[t.from].last = std::max(iv[t.from].last, t.depart);
    iv[t.from].has_departure = true;
  }
  return iv;
}

std::vector<VertexMask> bags_from(const std::vector<Interval>& iv, TimeStep horizon) {
  std::vector<VertexMask> bags(horizon + 1, 0);
  for (VertexId v = 0; v < iv.size(); ++v) {
    if (iv[v].first == kNever || !iv[v].has_departure) continue;
    for (TimeStep t = iv[v].first; t <= std::min(iv[v].last, horizon); ++t) {
      bags[t] |= VertexMask{1} << v;
    }
  }
  return bags;
}

std::uint32_t width_of(const std::vector<VertexMask>& bags) {
  std::uint32_t w = 0;
  for (auto b : bags) w = std::max<std::uint32_t>(w, std::popcount(b));
  return w;
}

struct State {
  VertexId at;
  std::uint32_t before;
  VertexMask in;
  Cost fuel;
  std::int64_t pred;
  std::int64_t tuple;  // -1 for carry-over
  bool live = true;
};

}  // namespace

VitwSequence vitw_sequence(const TemporalCostGraph& g) {
  if (g.vertex_count() > 64) throw CapabilityError("bag sequences support at most 64 vertices");
  VitwSequence seq;
  seq.bags = bags_from(membership(g), g.lifetime());
  seq.width = width_of(seq.bags);
  return seq;
}

SolveResult solve_vitw(const Instance& inst, const VitwOptions& options) {
  detail::Stopwatch clock;
  inst.validate();
  const auto& q = inst.query;
  const auto& src = inst.graph;
  if (src.vertex_count() > 64) throw CapabilityError("vitw supports at most 64 vertices");

  SolveResult res;
  res.solver = "vitw";

  // Normalize: drop tuples no walk source->sink can use and shift time.
  TimeStep first_departure = kNever, last_arrival = 0;
  bool sink_reached = false;
  for (auto id : src.outgoing(q.source)) first_departure = std::min(first_departure, src.tuples()[id].depart);
  for (auto id : src.incoming(q.sink)) {
    last_arrival = std::max(last_arrival, src.tuples()[id].arrive);
    sink_reached = true;
  }
  const TimeStep shift = first_departure != kNever && first_departure > 0 ? first_departure - 1 : 0;
  std::vector<CostTuple> kept;
  if (first_departure != kNever && sink_reached) {
    for (std::uint32_t i = 0; i < src.tuples().size(); ++i) {
      auto t = src.tuples()[i];
      if (t.depart < first_departure || t.arrive > last_arrival) continue;
      t.depart -= shift;
      t.arrive -= shift;
      kept.push_back(t);
    }
  }
  const TemporalCostGraph g(src.vertex_count(), std::move(kept));
  res.stats.time_shift = shift;
  const TimeStep horizon = g.lifetime();

  // Bags for the sweep: the source counts as arrived at 0 and the sink as
  // departing at the horizon, so the walk's current vertex is always live.
  auto iv = membership(g);
  iv[q.source].first = 0;
  if (!iv[q.source].has_departure) {
    iv[q.source].has_departure = true;
    iv[q.source].last = 0;
  }
  iv[q.sink].has_departure = true;
  iv[q.sink].last = horizon;
  auto bags = bags_from(iv, horizon);
  res.stats.width = width_of(bags);
  if (res.stats.width > options.max_width) {
    throw CapabilityError("vitw width " + std::to_string(res.stats.width) + " exceeds cap " +
                          std::to_string(options.max_width));
  }

  const std::uint32_t k = q.k;
  auto bit = [](VertexId v) { return VertexMask{1} << v; };
  std::vector<State> states;
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, VertexMask>& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
    }
  };
  std::vector<std::unordered_map<std::pair<std::uint64_t, VertexMask>, std::size_t, KeyHash>> index(
      horizon + 1);
  std::vector<std::vector<std::size_t>> order(horizon + 1);

  auto relax = [&](TimeStep t, VertexId at, std::uint32_t before, VertexMask in, Cost fuel,
                   std::int64_t pred, std::int64_t tuple) {
    auto key = std::make_pair((std::uint64_t{at} << 32) | before, in);
    auto [it, fresh] = index[t].try_emplace(key, states.size());
    if (fresh) {
      states.push_back({at, before, in, fuel, pred, tuple});
      order[t].push_back(it->second);
    } else if (fuel < states[it->second].fuel) {
      auto& s = states[it->second];
      s.fuel = fuel;
      s.pred = pred;
      s.tuple = tuple;
    }
  };
  auto forget = [&](std::uint32_t before, VertexMask in, VertexMask bag) {
    auto dropped = static_cast<std::uint32_t>(std::popcount(in & ~bag));
    return std::make_pair(std::min(k, before + dropped), in & bag);
  };

  relax(0, q.source, 0, bit(q.source), Cost::zero(), -1, -1);
  std::int64_t best = -1;

  for (TimeStep t = 0; t <= horizon; ++t) {
    if (options.dominance_pruning) {
      // Same (vertex, bag subset): drop a state if another has >= forgotten
      // count and <= fuel.
      std::map<std::pair<VertexId, VertexMask>, std::vector<std::size_t>> groups;
      for (auto id : order[t]) groups[{states[id].at, states[id].in}].push_back(id);
      for (auto& [_, ids] : groups) {
        std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
          if (states[a].before != states[b].before) return states[a].before > states[b].before;
          return a < b;
        });
        Cost floor = Cost::infinite();
        for (auto id : ids) {
          if (states[id].fuel >= floor) {
            states[id].live = false;
          } else {
            floor = states[id].fuel;
          }
        }
      }
    }
    std::uint64_t live = 0;
    for (auto id : order[t]) {
      if (!states[id].live) continue;
      ++live;
      const State s = states[id];
      if (s.at == q.sink && s.before + static_cast<std::uint32_t>(std::popcount(s.in)) >= k &&
          (best < 0 || s.fuel < states[best].fuel)) {
        best = static_cast<std::int64_t>(id);
      }
      if (t < horizon && (bags[t + 1] & bit(s.at))) {
        auto [before, in] = forget(s.before, s.in, bags[t + 1]);
        relax(t + 1, s.at, before, in, s.fuel, static_cast<std::int64_t>(id), -1);
      }
      for (auto tid : g.outgoing(s.at)) {
        const auto& tup = g.tuples()[tid];
        if (tup.depart != t) continue;
        ++res.stats.arcs;
        if (!(bags[tup.arrive] & bit(tup.to))) continue;  // stranded after arrival
        auto [before, in] = forget(s.before, s.in, bags[tup.arrive]);
        relax(tup.arrive, tup.to, before, in | bit(tup.to), s.fuel + tup.cost,
              static_cast<std::int64_t>(id), tid);
      }
    }
    res.stats.max_live_states = std::max(res.stats.max_live_states, live);
  }
  res.stats.states = states.size();

  if (best >= 0) {
    res.optimal_cost = states[best].fuel;
    Walk w;
    for (auto id = best; id >= 0; id = states[id].pred) {
      if (states[id].tuple < 0) continue;
      auto step = g.tuples()[states[id].tuple].traversal();
      step.depart += shift;
      step.arrive += shift;
      w.steps.push_back(step);
    }
    std::reverse(w.steps.begin(), w.steps.end());
    res.witness = std::move(w);
  }
  res.feasible = res.optimal_cost <= q.budget;
  res.stats.millis = clock.millis();
  return res;
}

}  // namespace ccto
