#pragma once

#include <cstdint>
#include <vector>

#include "ccto/graph.hpp"
#include "ccto/result.hpp"

namespace ccto {

using VertexMask = std::uint64_t;  // bit v set <=> vertex v present; n <= 64

/// Bags H_t for t = 0..T: v is in H_t iff some stored tuple arrives at v at a
/// time <= t and some stored tuple departs v at a time >= t.
struct VitwSequence {
  std::vector<VertexMask> bags;
  std::uint32_t width = 0;

  bool contains(TimeStep t, VertexId v) const { return (bags[t] >> v) & 1U; }
};

/// Throws CapabilityError for n > 64.
VitwSequence vitw_sequence(const TemporalCostGraph& g);

struct VitwOptions {
  std::uint32_t max_width = 12;
  bool dominance_pruning = true;
};

/// Dynamic program over the bag sequence with states
/// (current vertex, forgotten-visited count, visited bag subset) -> min fuel.
/// The instance is first restricted to tuples departing no earlier than the
/// source's first departure and arriving no later than the sink's last
/// arrival, then shifted so the first departure is at time 1.
SolveResult solve_vitw(const Instance& inst, const VitwOptions& options = {});

}  // namespace ccto
