#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "ccto/graph.hpp"

namespace ccto {

/// Weighted DAG whose node ids are a topological order: every arc goes from a
/// lower id to a higher id. Arcs are stored grouped by tail node.
class Dag {
 public:
  static constexpr std::int64_t kNoTag = -1;

  struct Arc {
    std::uint32_t head;
    Cost weight;
    std::int64_t tag;  // caller payload, e.g. a tuple index; kNoTag for waits
  };

  explicit Dag(std::size_t nodes = 0) : offsets_(nodes + 1, 0) {}

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t arc_count() const { return arcs_.size(); }

  /// Arcs must be added in non-decreasing tail order.
  void add_arc(std::uint32_t tail, std::uint32_t head, Cost weight, std::int64_t tag = kNoTag);
  /// Finishes offsets; call once after the last add_arc.
  void seal();

  std::span<const Arc> arcs_from(std::uint32_t node) const {
    return {arcs_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
  }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<Arc> arcs_;
  std::uint32_t last_tail_ = 0;
  bool sealed_ = false;
};

struct DagPath {
  Cost cost = Cost::infinite();
  std::vector<std::uint32_t> nodes;      // src .. dst, empty if unreachable
  std::vector<std::int64_t> arc_tags;    // one per arc on the path
  std::size_t relaxed_nodes = 0;
};

/// Minimum-weight src->dst path by a single sweep in id order.
DagPath dag_shortest_path(const Dag& dag, std::uint32_t src, std::uint32_t dst);

struct ExpandedVertex {
  VertexId vertex = 0;
  TimeStep time = 0;
  friend auto operator<=>(const ExpandedVertex&, const ExpandedVertex&) = default;
};

struct ExpandedArc {
  ExpandedVertex from;
  ExpandedVertex to;
  Cost weight;
};

/// Time expanded cost graph over (vertex, time) for time in 0..T. One arc per
/// stored tuple plus unit waiting arcs u_t -> u_{t+1} of weight 0.
class ExpandedGraph {
 public:
  ExpandedGraph(const TemporalCostGraph& g);

  std::size_t vertex_count() const { return dag_.node_count(); }
  std::size_t arc_count() const { return dag_.arc_count(); }
  TimeStep horizon() const { return horizon_; }

  std::uint32_t node(ExpandedVertex v) const;
  ExpandedVertex vertex(std::uint32_t node) const;
  std::vector<ExpandedArc> arcs() const;
  const Dag& dag() const { return dag_; }
  const TemporalCostGraph& graph() const { return *graph_; }

  /// One arc per line: `u t1 v t2 weight`.
  void write_text(std::ostream& os) const;

 private:
  const TemporalCostGraph* graph_;
  std::size_t n_;
  TimeStep horizon_;
  Dag dag_;
};

ExpandedGraph build_time_expanded(const TemporalCostGraph& g);

struct ExpandedPath {
  Cost cost = Cost::infinite();
  std::vector<ExpandedArc> arcs;
  /// The non-waiting arcs as a walk in the original graph.
  Walk walk;
};

ExpandedPath dag_min_cost_path(const ExpandedGraph& dag, ExpandedVertex src, ExpandedVertex dst);

}  // namespace ccto
