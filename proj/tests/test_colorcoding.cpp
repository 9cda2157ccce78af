#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ccto/colorcoding.hpp"
#include "ccto/errors.hpp"
#include "ccto/oracle.hpp"
#include "support.hpp"

using namespace ccto;
using namespace ccto::testing;

TEST(MinWalk, Fixtures) {
  auto f = all_pairs_min_walk(i2_graph());
  EXPECT_EQ(f.at(S, B, 1, 3), Cost(6));
  EXPECT_TRUE(f.at(S, B, 1, 2).is_infinite());
  EXPECT_EQ(f.at(A, A, 2, 2), Cost::zero());
  auto g = all_pairs_min_walk(i1_graph());
  EXPECT_EQ(g.at(A, A, 2, 5), Cost::zero());
  EXPECT_TRUE(g.at(A, A, 5, 2).is_infinite());
  EXPECT_EQ(g.at(S, S, 0, 6), Cost::zero());
}

TEST(MinWalk, RestrictionBlocksIntermediates) {
  auto g = i2_graph();
  VertexSet only_s{true, false, false};
  auto f = all_pairs_min_walk(g, only_s);
  EXPECT_EQ(f.at(S, A, 1, 2), Cost(2));  // endpoint need not be allowed
  EXPECT_TRUE(f.at(S, B, 1, 3).is_infinite());
  EXPECT_EQ(f.at(A, B, 2, 3), Cost(4));  // start is always allowed
  EXPECT_THROW(all_pairs_min_walk(g, VertexSet{true}), UsageError);
}

TEST(MinWalk, TraceRebuildsWalk) {
  auto g = i1_graph();
  auto f = all_pairs_min_walk(g);
  auto w = trace_min_walk(g, f, std::nullopt, S, B, 0, 3);
  EXPECT_EQ(w, (Walk{{{S, A, 1, 2}, {A, B, 2, 3}}}));
}

// Fast kernel, literal recurrence and exhaustive DFS on every quadruple.
TEST(MinWalkProperties, KernelsMatchOracle) {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 60; ++rep) {
    auto inst = random_small(rng, 5, 6, rep % 2 == 0, 0.12);
    const auto& g = inst.graph;
    auto fast = all_pairs_min_walk(g);
    auto slow = all_pairs_min_walk_serial(g);
    ASSERT_EQ(fast, slow);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (TimeStep t1 = 0; t1 <= g.lifetime(); ++t1) {
          for (TimeStep t2 = 0; t2 <= g.lifetime(); ++t2) {
            ASSERT_EQ(fast.at(u, v, t1, t2), min_cost_walk_oracle(g, u, v, t1, t2));
          }
        }
      }
    }
  }
}

TEST(MinWalkProperties, RestrictedKernelsAgree) {
  std::mt19937_64 rng(62);
  for (int rep = 0; rep < 60; ++rep) {
    auto inst = random_small(rng, 6, 6, false, 0.1);
    VertexSet allowed(inst.graph.vertex_count());
    for (std::size_t v = 0; v < allowed.size(); ++v) allowed[v] = rng() % 2;
    EXPECT_EQ(all_pairs_min_walk(inst.graph, allowed), all_pairs_min_walk_serial(inst.graph, allowed));
  }
}

// More passable vertices never cost more.
TEST(MinWalkProperties, MonotoneInRestriction) {
  std::mt19937_64 rng(63);
  for (int rep = 0; rep < 60; ++rep) {
    auto inst = random_small(rng, 6, 6, rep % 2 == 0, 0.1);
    const auto& g = inst.graph;
    VertexSet small(g.vertex_count()), big(g.vertex_count());
    for (std::size_t v = 0; v < small.size(); ++v) {
      small[v] = rng() % 3 == 0;
      big[v] = small[v] || rng() % 2 == 0;
    }
    auto a = all_pairs_min_walk(g, small);
    auto b = all_pairs_min_walk(g, big);
    auto c = all_pairs_min_walk(g);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (TimeStep t1 = 0; t1 <= g.lifetime(); ++t1) {
          for (TimeStep t2 = 0; t2 <= g.lifetime(); ++t2) {
            EXPECT_LE(b.at(u, v, t1, t2), a.at(u, v, t1, t2));
            EXPECT_LE(c.at(u, v, t1, t2), b.at(u, v, t1, t2));
          }
        }
      }
    }
  }
}

TEST(OrderedWalk, Fixtures) {
  auto g = i2_graph();
  Colouring c{{0, 1, 2}, 3};
  auto fwd = ordered_walk_min(g, c, {0, 1, 2});
  EXPECT_EQ(fwd.cost, Cost(6));
  ASSERT_TRUE(fwd.walk.has_value());
  EXPECT_EQ(walk_cost(g, *fwd.walk), Cost(6));
  EXPECT_TRUE(ordered_walk_min(g, c, {0, 2, 1}).cost.is_infinite());
  Colouring single{{0, 1, 1}, 2};
  EXPECT_EQ(ordered_walk_min(g, single, {0, 1}).cost, Cost(2));  // b is behind a
}

TEST(OrderedWalk, PaletteOfOne) {
  TemporalCostGraph g(1, {});
  auto r = ordered_walk_min(g, Colouring{{0}, 1}, {0});
  EXPECT_EQ(r.cost, Cost::zero());
  EXPECT_TRUE(r.walk->empty());
}

TEST(OrderedWalk, Errors) {
  auto g = i2_graph();
  EXPECT_THROW(ordered_walk_min(g, Colouring{{0, 0, 1}, 2}, {0, 1}), UsageError);
  EXPECT_THROW(ordered_walk_min(g, Colouring{{1, 0, 2}, 3}, {1, 0, 2}), UsageError);
  EXPECT_THROW(ordered_walk_min(g, Colouring{{0, 1, 2}, 3}, {0, 1}), UsageError);
  EXPECT_THROW(ordered_walk_min(g, Colouring{{0, 1, 3}, 3}, {0, 1, 2}), UsageError);
}

// Identity colouring: the ordered minimum equals the cheapest walk whose
// first visits follow the order, found by enumeration.
TEST(OrderedWalkProperties, IdentityColouringMatchesEnumeration) {
  std::mt19937_64 rng(65);
  for (int rep = 0; rep < 80; ++rep) {
    auto inst = random_small(rng, 4, 5, false, 0.2);
    const auto& g = inst.graph;
    const auto n = static_cast<std::uint32_t>(g.vertex_count());
    const VertexId src = inst.query.source;
    std::vector<VertexId> others;
    for (VertexId v = 0; v < n; ++v) {
      if (v != src) others.push_back(v);
    }
    Colouring c{std::vector<std::uint32_t>(n), n};
    for (std::uint32_t i = 0; i < others.size(); ++i) c.colour[others[i]] = i + 1;
    do {
      ColourOrder order{0};
      for (auto v : others) order.push_back(c.colour[v]);
      Cost want = Cost::infinite();
      for_each_walk(g, src, [&](const Walk& w) {
        std::vector<VertexId> first{src};
        for (const auto& s : w.steps) {
          if (std::find(first.begin(), first.end(), s.to) == first.end()) first.push_back(s.to);
        }
        if (first.size() != n) return;
        for (std::size_t i = 0; i < n; ++i) {
          if (c.colour[first[i]] != order[i]) return;
        }
        if (w.steps.back().to != first.back()) return;  // ends on its first visit
        want = min(want, walk_cost(g, w));
      });
      EXPECT_EQ(ordered_walk_min(g, c, order).cost, want);
    } while (std::next_permutation(others.begin(), others.end()));
  }
}

TEST(Colourful, Fixtures) {
  Instance inst{i2_graph(), {S, B, 3, Cost(6)}};
  Colouring c{{0, 1, 0}, 2};
  auto r = solve_colourful(inst, c);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.optimal_cost, Cost(6));
  inst.query.budget = Cost(5);
  EXPECT_FALSE(solve_colourful(inst, c).feasible);
}

TEST(Colourful, DirectQueryForSmallK) {
  Instance inst{i2_graph(), {S, B, 2, Cost(6)}};
  auto r = solve_colourful(inst, Colouring{{0, 0, 0}, 1});
  EXPECT_EQ(r.optimal_cost, Cost(6));
  EXPECT_EQ(r.stats.permutations, 1u);
  Instance here{i2_graph(), {S, S, 1, Cost(0)}};
  EXPECT_EQ(solve_colourful(here, Colouring{{0, 0, 0}, 1}).optimal_cost, Cost::zero());
}

TEST(Colourful, RejectsOutOfRangeColour) {
  Instance inst{i2_graph(), {S, B, 3, Cost(6)}};
  EXPECT_THROW(solve_colourful(inst, Colouring{{0, 2, 0}, 3}), UsageError);
}

// The sink may be visited before every colour is seen.
TEST(Colourful, SinkPassedEarly) {
  // path a - t - b; source a, sink t.
  TemporalCostGraph g(3, {{0, 1, 0, 1, Cost(1)}, {1, 2, 1, 2, Cost(1)}, {2, 1, 2, 3, Cost(1)}});
  Instance inst{g, {0, 1, 3, Cost(3)}};
  auto r = solve_colourful(inst, Colouring{{0, 0, 1}, 2});
  EXPECT_EQ(r.optimal_cost, Cost(3));
  EXPECT_EQ(r.optimal_cost, solve_exact(inst).optimal_cost);
}

TEST(ColorCoding, Fixtures) {
  Instance inst{i2_graph(), {S, B, 3, Cost(6)}};
  auto r = solve_color_coding(inst);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.optimal_cost, Cost(6));
  EXPECT_EQ(r.stats.trials, 1u);
  auto closed = solve_color_coding(i1());
  EXPECT_TRUE(closed.feasible);
  EXPECT_EQ(closed.optimal_cost, Cost(8));
  auto one = solve_color_coding(i1(1, 0));
  EXPECT_EQ(one.optimal_cost, Cost::zero());
}

TEST(ColorCoding, TrialCount) {
  EXPECT_EQ(derived_trial_count(0, 1e-3), 1u);
  EXPECT_EQ(derived_trial_count(1, 1e-3), 1u);
  EXPECT_EQ(derived_trial_count(3, 1e-3), 139u);  // ceil(e^3 * ln 1000)
  EXPECT_EQ(inner_colour_count(Query{0, 1, 5, Cost(1)}), 3u);
  EXPECT_EQ(inner_colour_count(Query{0, 0, 5, Cost(1)}), 4u);
}

TEST(ColorCoding, ExhaustiveCap) {
  TemporalCostGraph g(12, {});
  Instance inst{g, {0, 1, 6, Cost(10)}};
  ColorCodingOptions opt;
  opt.max_colourings = 1000;
  EXPECT_THROW(solve_color_coding(inst, opt), CapabilityError);
}

TEST(ColorCoding, RandomizedIsReproducible) {
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 20; ++rep) {
    auto inst = random_small(rng, 6, 6, false, 0.1);
    ColorCodingOptions opt;
    opt.mode = ColourMode::randomized;
    opt.seed = 99;
    auto a = solve_color_coding(inst, opt);
    opt.parallel = false;
    auto b = solve_color_coding(inst, opt);
    EXPECT_EQ(a.optimal_cost, b.optimal_cost);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.stats.trials, b.stats.trials);
  }
}

TEST(ColorCodingProperties, ExhaustiveMatchesOracle) {
  std::mt19937_64 rng(69);
  for (int rep = 0; rep < 200; ++rep) {
    auto inst = random_small(rng, 6, 7, rep % 2 == 0, 0.08);
    auto want = solve_exact(inst);
    auto got = solve_color_coding(inst);
    ASSERT_EQ(got.optimal_cost, want.optimal_cost) << "rep " << rep;
    EXPECT_EQ(got.feasible, want.feasible);
    EXPECT_EQ(got.cost_status, CostStatus::exact);
  }
}

// A colourful yes is always a real yes.
TEST(ColorCodingProperties, ColourfulImpliesOracle) {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 150; ++rep) {
    auto inst = random_small(rng, 6, 7, false, 0.1);
    const auto m = inner_colour_count(inst.query);
    if (m == 0) continue;
    Colouring c{std::vector<std::uint32_t>(inst.graph.vertex_count(), 1), m + 1};
    for (auto& x : c.colour) x = 1 + static_cast<std::uint32_t>(rng() % m);
    auto r = solve_colourful(inst, c);
    auto want = solve_exact(inst);
    EXPECT_GE(r.optimal_cost, want.optimal_cost);
    if (r.feasible) EXPECT_TRUE(want.feasible);
    if (r.witness) {
      EXPECT_FALSE(witness_problem(inst, *r.witness, r.optimal_cost).has_value());
    }
  }
}

TEST(ColorCodingProperties, RandomizedYesIsVerified) {
  std::mt19937_64 rng(73);
  for (int rep = 0; rep < 60; ++rep) {
    auto inst = random_small(rng, 6, 7, rep % 2 == 0, 0.1);
    ColorCodingOptions opt;
    opt.mode = ColourMode::randomized;
    opt.seed = rep;
    auto r = solve_color_coding(inst, opt);
    auto want = solve_exact(inst);
    if (r.feasible) {
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_FALSE(witness_problem(inst, *r.witness, r.optimal_cost).has_value());
      EXPECT_TRUE(want.feasible);
    }
    EXPECT_GE(r.optimal_cost, want.optimal_cost);
  }
}
