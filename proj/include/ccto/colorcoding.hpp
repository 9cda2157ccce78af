#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccto/graph.hpp"
#include "ccto/result.hpp"

namespace ccto {

/// Dense table of F̂(u, v, t1, t2): the cheapest walk that is at u at time t1
/// and whose last hop reaches v exactly at t2. F̂(u, u, t1, t2) = 0 for
/// t1 <= t2; everything with t2 < t1 is Infinite.
class MinWalkTable {
 public:
  MinWalkTable() = default;
  MinWalkTable(std::size_t n, TimeStep horizon)
      : n_(n), width_(horizon + 1), data_(n * n * width_ * width_, Cost::infinite()) {}

  std::size_t vertex_count() const { return n_; }
  TimeStep horizon() const { return static_cast<TimeStep>(width_ - 1); }

  Cost at(VertexId u, VertexId v, TimeStep t1, TimeStep t2) const { return data_[slot(u, v, t1, t2)]; }
  Cost& at(VertexId u, VertexId v, TimeStep t1, TimeStep t2) { return data_[slot(u, v, t1, t2)]; }

  friend bool operator==(const MinWalkTable&, const MinWalkTable&) = default;

 private:
  std::size_t slot(VertexId u, VertexId v, TimeStep t1, TimeStep t2) const {
    return ((static_cast<std::size_t>(u) * n_ + v) * width_ + t1) * width_ + t2;
  }

  std::size_t n_ = 0;
  std::size_t width_ = 1;
  std::vector<Cost> data_;
};

/// allowed[v] <=> v may be entered and left mid-walk. The start vertex u is
/// always allowed; the end vertex v need not be.
using VertexSet = std::vector<bool>;

/// Per source, a sweep over arrival times with a running "present by t"
/// minimum. Parallel over sources.
MinWalkTable all_pairs_min_walk(const TemporalCostGraph& g,
                                const std::optional<VertexSet>& restrict_to = std::nullopt);
/// Direct evaluation of the recurrence
///   F̂(u,v,t1,i) = min over t1 <= t' <= t'' < i, v' of F̂(u,v',t1,t') + F(v',v,t'',i).
/// Single threaded; kept as the reference for the fast kernel.
MinWalkTable all_pairs_min_walk_serial(const TemporalCostGraph& g,
                                       const std::optional<VertexSet>& restrict_to = std::nullopt);

/// A walk realizing table.at(u, v, t1, t2), built by re-searching the table.
/// Empty when u == v. Precondition: the entry is finite.
Walk trace_min_walk(const TemporalCostGraph& g, const MinWalkTable& table,
                    const std::optional<VertexSet>& restrict_to, VertexId u, VertexId v,
                    TimeStep t1, TimeStep t2);

struct Colouring {
  std::vector<std::uint32_t> colour;  // per vertex, < palette
  std::uint32_t palette = 0;
};

/// Permutation of the palette; colour 0 first.
using ColourOrder = std::vector<std::uint32_t>;

struct OrderedWalk {
  Cost cost = Cost::infinite();
  std::optional<Walk> walk;
};

/// Cheapest walk from the unique colour-0 vertex whose colours first appear
/// exactly in `order`, ending at a vertex of the last colour (by time T).
/// Throws UsageError unless colour 0 is a single vertex and `order` is a
/// permutation starting with 0.
OrderedWalk ordered_walk_min(const TemporalCostGraph& g, const Colouring& colouring,
                             const ColourOrder& order);

/// One vertex of every inner colour, then on to the sink. `inner` gives a
/// colour in 1..m for each vertex other than source and sink, where
/// m = k-2 (k-1 when source == sink); other entries are ignored. The sink may
/// be passed through at any point. Throws UsageError on out-of-range colours.
SolveResult solve_colourful(const Instance& inst, const Colouring& inner);

enum class ColourMode { exhaustive, randomized };

struct ColorCodingOptions {
  ColourMode mode = ColourMode::exhaustive;
  std::uint64_t trials = 0;  // 0: derive from delta
  double delta = 1e-3;
  std::uint64_t seed = 0;
  std::uint64_t max_colourings = 1'000'000;  // exhaustive cap
  bool parallel = true;
};

/// Number of inner colours used for the instance's query.
std::uint32_t inner_colour_count(const Query& q);
/// ceil(e^m ln(1/delta)).
std::uint64_t derived_trial_count(std::uint32_t inner_colours, double delta);
/// Number of colourings exhaustive mode iterates, saturated at UINT64_MAX.
std::uint64_t exhaustive_colouring_count(const Instance& inst);

/// Throws CapabilityError when exhaustive mode would exceed max_colourings.
SolveResult solve_color_coding(const Instance& inst, const ColorCodingOptions& options = {});

}  // namespace ccto
