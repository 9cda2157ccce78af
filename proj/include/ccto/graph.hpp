#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccto/cost.hpp"

namespace ccto {

using VertexId = std::uint32_t;
using TimeStep = std::uint32_t;

/// One hop of a walk: depart `from` at `depart`, arrive at `to` at `arrive`.
/// from == to denotes waiting.
struct Traversal {
  VertexId from = 0;
  VertexId to = 0;
  TimeStep depart = 0;
  TimeStep arrive = 0;

  bool is_wait() const { return from == to; }
  friend auto operator<=>(const Traversal&, const Traversal&) = default;
};

/// A stored finite-cost quadruple of the cost function.
struct CostTuple {
  VertexId from = 0;
  VertexId to = 0;
  TimeStep depart = 0;
  TimeStep arrive = 0;
  Cost cost;

  Traversal traversal() const { return {from, to, depart, arrive}; }
  friend bool operator==(const CostTuple&, const CostTuple&) = default;
};

/// Unordered vertex pair, normalized so that lo < hi.
struct Edge {
  VertexId lo = 0;
  VertexId hi = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : lo(a < b ? a : b), hi(a < b ? b : a) {}
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Temporal cost graph: vertices 0..n-1 and a sparse map from
/// (from, to, depart, arrive) to a finite cost. Every absent quadruple is
/// Infinite except same-vertex waiting (t1 < t2), which costs 0.
/// Immutable after construction.
class TemporalCostGraph {
 public:
  TemporalCostGraph() = default;
  /// Throws UsageError when a tuple breaks depart < arrive, from != to,
  /// cost >= 1, finiteness, vertex range, or duplicates another key.
  TemporalCostGraph(std::size_t n, std::vector<CostTuple> tuples,
                    std::vector<std::string> names = {});

  std::size_t vertex_count() const { return n_; }
  TimeStep lifetime() const { return lifetime_; }

  Cost cost(VertexId from, VertexId to, TimeStep depart, TimeStep arrive) const;
  Cost cost(const Traversal& t) const { return cost(t.from, t.to, t.depart, t.arrive); }
  /// Index into tuples() for a stored quadruple.
  std::optional<std::size_t> find(const Traversal& t) const;

  /// Stored tuples, sorted by (from, depart, arrive, to).
  std::span<const CostTuple> tuples() const { return tuples_; }
  /// Indices of tuples leaving / entering v; outgoing sorted by depart,
  /// incoming by arrive.
  std::span<const std::uint32_t> outgoing(VertexId v) const;
  std::span<const std::uint32_t> incoming(VertexId v) const;

  std::span<const Edge> edges() const { return edges_; }
  std::span<const VertexId> neighbours(VertexId v) const;
  bool has_edge(VertexId a, VertexId b) const;

  /// Display name, or the decimal id when none was given.
  std::string vertex_name(VertexId v) const;
  const std::vector<std::string>& names() const { return names_; }

  bool is_connected() const;
  void check_vertex(VertexId v) const;

 private:
  struct KeyHash {
    std::size_t operator()(const Traversal& t) const noexcept;
  };

  std::size_t n_ = 0;
  std::vector<CostTuple> tuples_;
  std::vector<std::string> names_;
  std::unordered_map<Traversal, std::uint32_t, KeyHash> index_;
  std::vector<std::uint32_t> out_offsets_, out_ids_;
  std::vector<std::uint32_t> in_offsets_, in_ids_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> adj_offsets_;
  std::vector<VertexId> adj_;
  TimeStep lifetime_ = 0;
};

struct Walk {
  std::vector<Traversal> steps;

  bool empty() const { return steps.empty(); }
  friend bool operator==(const Walk&, const Walk&) = default;
};

struct ValidationReport {
  bool valid = true;
  std::optional<std::size_t> step;  // first offending step
  std::string reason;

  explicit operator bool() const { return valid; }
};

/// Longest chain of usable time windows (finite in either direction) on
/// edge {u,v}, chained by arrive <= next depart. Throws UsageError on a
/// non-edge.
std::size_t max_traversal_number(const TemporalCostGraph& g, Edge e);

ValidationReport validate_walk(const TemporalCostGraph& g, const Walk& w, VertexId anchor);
/// Throws UsageError when the walk is not valid from its own first vertex.
Cost walk_cost(const TemporalCostGraph& g, const Walk& w);
std::size_t distinct_vertices(const Walk& w, VertexId anchor);

struct Query {
  VertexId source = 0;
  VertexId sink = 0;
  std::uint32_t k = 1;
  Cost budget;

  friend bool operator==(const Query&, const Query&) = default;
};

/// CCTO instance. k may exceed n, in which case every solver answers no.
struct Instance {
  TemporalCostGraph graph;
  Query query;

  /// Throws UsageError on bad ids, k == 0, or an infinite budget.
  void validate() const;
};

/// Empty when the walk is a valid source->sink walk visiting >= k distinct
/// vertices with the stated cost; otherwise the reason it is not.
std::optional<std::string> witness_problem(const Instance& inst, const Walk& w, Cost expected);

// Underlying-graph helpers.
bool is_forest(const TemporalCostGraph& g);
/// Hop distances from `root` over the underlying graph; -1 when unreachable.
std::vector<int> bfs_distances(const TemporalCostGraph& g, VertexId root);
/// Vertex sequence of the unique path a..b in a forest; empty if disconnected.
std::vector<VertexId> forest_path(const TemporalCostGraph& g, VertexId a, VertexId b);

}  // namespace ccto
