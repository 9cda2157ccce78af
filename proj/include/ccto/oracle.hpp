#pragma once

#include <cstddef>

#include "ccto/graph.hpp"
#include "ccto/result.hpp"

namespace ccto {

struct OracleLimits {
  std::size_t max_vertices = 14;        // solve_exact: 2^n visited sets
  std::size_t max_walk_vertices = 8;     // min_cost_walk_oracle
  TimeStep max_walk_lifetime = 10;
};

/// Ground-truth CCTO solver: label-setting over (vertex, arrival time,
/// visited set) in increasing time. Throws CapabilityError above the cap.
SolveResult solve_exact(const Instance& inst, const OracleLimits& limits = {});

/// Minimum cost of a walk that is at `u` at time `depart` (it may wait
/// there) and whose last hop reaches `v` exactly at `arrive`; 0 when u == v
/// and depart <= arrive. Exhaustive DFS over tuple chains.
Cost min_cost_walk_oracle(const TemporalCostGraph& g, VertexId u, VertexId v, TimeStep depart,
                          TimeStep arrive, const OracleLimits& limits = {});

}  // namespace ccto
