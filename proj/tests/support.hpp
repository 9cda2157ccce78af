#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "ccto/graph.hpp"
#include "ccto/instances.hpp"

namespace ccto::testing {

// Fixtures. Vertices: s = 0, a = 1, b = 2.
constexpr VertexId S = 0, A = 1, B = 2;

TemporalCostGraph i1_graph();
TemporalCostGraph i2_graph();
TemporalCostGraph i3_graph();
Instance i1(std::uint32_t k = 3, std::uint64_t budget = 8);
Instance i3(std::uint32_t k = 3, std::uint64_t budget = 3);
Walk w1();

/// Exhaustive enumeration of every valid walk from `source` starting at
/// time 0 with no waiting steps, calling `visit` on each (the empty walk
/// included).
void for_each_walk(const TemporalCostGraph& g, VertexId source,
                   const std::function<void(const Walk&)>& visit);

/// Minimum cost qualifying walk by plain enumeration; Infinite if none.
Cost brute_force_ccto(const Instance& inst);

/// Direct evaluation of the bag definition: v in H_t iff some tuple
/// arrives at v at i <= t and some tuple departs v at j >= t.
std::vector<std::uint64_t> brute_force_bags(const TemporalCostGraph& g);

/// Leaf order plus strictly increasing label choices: each leaf is entered
/// at some label t and left at a later label t' > t, and the next leaf's
/// entry label exceeds t'.
bool starexp_brute_force(const TemporalStar& star);

/// Small random instance with the given shape; the query is drawn
/// separately from `rng`.
Instance random_small(std::mt19937_64& rng, std::size_t max_n, TimeStep max_t, bool tree,
                      double density, std::uint64_t max_cost = 5);

/// Tree instance whose every edge has traversal number <= 3.
Instance random_low_traversal_tree(std::mt19937_64& rng, std::size_t max_n, TimeStep max_t);

/// Graph where every vertex has at most three distinct triples.
Instance random_sparse_triples(std::mt19937_64& rng, std::size_t max_n, TimeStep max_t);

}  // namespace ccto::testing
