#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ccto/graph.hpp"

namespace ccto {

/// How far optimal_cost can be trusted.
enum class CostStatus {
  exact,        // minimum over all qualifying walks
  upper_bound,  // cost of the best walk found (randomized search)
  unknown,      // decided without computing a cost (budget-bound rule)
};

struct SolveStats {
  std::uint64_t states = 0;  // auxiliary states created
  std::uint64_t arcs = 0;
  std::uint64_t max_live_states = 0;  // per time layer / bag
  std::uint64_t trials = 0;           // colourings tried
  std::uint64_t permutations = 0;
  std::uint32_t width = 0;            // bag width used by the sweep
  std::int64_t time_shift = 0;        // original time = solver time + shift
  double millis = 0;
};

struct SolveResult {
  bool feasible = false;
  Cost optimal_cost = Cost::infinite();
  CostStatus cost_status = CostStatus::exact;
  std::optional<Walk> witness;
  std::string solver;
  SolveStats stats;
  /// Upper bound on the chance that a "not found" answer is wrong.
  double failure_probability = 0;
};

}  // namespace ccto
