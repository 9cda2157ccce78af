#include <gtest/gtest.h>

#include <random>

#include "ccto/errors.hpp"
#include "ccto/oracle.hpp"
#include "support.hpp"

using namespace ccto;
using namespace ccto::testing;

TEST(Oracle, FixtureFeasible) {
  auto r = solve_exact(i1());
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.optimal_cost, Cost(8));
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, w1());
}

TEST(Oracle, FixtureBudgetTooSmall) {
  auto r = solve_exact(i1(3, 7));
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.optimal_cost, Cost(8));
}

TEST(Oracle, TrivialWalk) {
  auto r = solve_exact(i1(1, 0));
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.optimal_cost, Cost::zero());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(r.witness->empty());
}

TEST(Oracle, MoreVerticesThanGraph) {
  auto r = solve_exact(i1(4, 100));
  EXPECT_FALSE(r.feasible);
  EXPECT_TRUE(r.optimal_cost.is_infinite());
}

TEST(Oracle, OpenWalk) {
  auto r = solve_exact(i3());
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.optimal_cost, Cost(3));
  EXPECT_FALSE(solve_exact(i3(3, 2)).feasible);
}

TEST(Oracle, CapacityError) {
  TemporalCostGraph g(20, {});
  Instance inst{g, {0, 0, 1, Cost(0)}};
  EXPECT_THROW(solve_exact(inst), CapabilityError);
}

TEST(WalkOracle, Fixtures) {
  auto g1 = i1_graph();
  EXPECT_EQ(min_cost_walk_oracle(g1, S, B, 1, 3), Cost(6));
  EXPECT_TRUE(min_cost_walk_oracle(g1, S, B, 1, 2).is_infinite());
  EXPECT_EQ(min_cost_walk_oracle(g1, A, A, 2, 5), Cost::zero());
  EXPECT_EQ(min_cost_walk_oracle(g1, S, S, 0, 6), Cost::zero());
  auto g2 = i2_graph();
  EXPECT_EQ(min_cost_walk_oracle(g2, S, B, 1, 3), Cost(6));
  EXPECT_TRUE(min_cost_walk_oracle(g2, S, B, 1, 2).is_infinite());
  EXPECT_TRUE(min_cost_walk_oracle(g2, S, B, 2, 3).is_infinite());
}

// Label search and plain walk enumeration are independent; they must agree.
TEST(OracleProperties, MatchesWalkEnumeration) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int rep = 0; rep < 300; ++rep) {
    auto inst = random_small(rng, 4, 5, rep % 2 == 1, 0.12);
    auto r = solve_exact(inst);
    EXPECT_EQ(r.optimal_cost, brute_force_ccto(inst)) << "rep " << rep;
    EXPECT_EQ(r.feasible, r.optimal_cost <= inst.query.budget);
    if (r.witness) {
      EXPECT_FALSE(witness_problem(inst, *r.witness, r.optimal_cost).has_value());
    }
    ++checked;
  }
  EXPECT_EQ(checked, 300);
}

// Adding a tuple never makes the optimum worse.
TEST(OracleProperties, MonotoneInTuples) {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 100; ++rep) {
    auto inst = random_small(rng, 5, 6, false, 0.08);
    const auto& g = inst.graph;
    if (g.vertex_count() < 2) continue;
    std::vector<CostTuple> more(g.tuples().begin(), g.tuples().end());
    CostTuple extra{static_cast<VertexId>(rng() % g.vertex_count()), 0,
                    static_cast<TimeStep>(rng() % 6), 0, Cost(1 + rng() % 5)};
    extra.to = (extra.from + 1 + rng() % (g.vertex_count() - 1)) % g.vertex_count();
    extra.arrive = extra.depart + 1 + rng() % 2;
    if (g.find(extra.traversal())) continue;
    more.push_back(extra);
    Instance bigger{TemporalCostGraph(g.vertex_count(), more), inst.query};
    EXPECT_LE(solve_exact(bigger).optimal_cost, solve_exact(inst).optimal_cost);
  }
}

// Raising k never lowers the optimum.
TEST(OracleProperties, MonotoneInK) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    auto inst = random_small(rng, 5, 6, rep % 2 == 0, 0.15);
    Cost prev = Cost::zero();
    for (std::uint32_t k = 1; k <= inst.graph.vertex_count() + 1; ++k) {
      inst.query.k = k;
      auto c = solve_exact(inst).optimal_cost;
      EXPECT_GE(c, prev);
      prev = c;
    }
  }
}
