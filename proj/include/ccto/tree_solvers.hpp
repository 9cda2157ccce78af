#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccto/graph.hpp"
#include "ccto/result.hpp"

namespace ccto {

// Applicability predicates: nullopt when the solver applies, otherwise the
// first failed condition. The tree-closed check ignores the query when
// `check_query` is false (structure only).

std::optional<std::string> tree_closed_problem(const Instance& inst, bool check_query = true);
std::optional<std::string> subforest_problem(const TemporalCostGraph& g,
                                             const std::vector<Edge>& subforest);
std::optional<std::string> sparse_triples_problem(const TemporalCostGraph& g);

/// Number of distinct (other endpoint, depart, arrive) triples touching v in
/// either direction.
std::size_t triple_count(const TemporalCostGraph& g, VertexId v);

/// Tree with source == sink and every edge's traversal number <= 3:
/// shortest path over (vertex, time, counter) with the counter advanced on
/// moves away from the source. Throws NotApplicable.
SolveResult solve_tree_closed(const Instance& inst);

struct PathDecomposition {
  /// Each path runs v_0 .. v_p: v_0 is the attachment vertex (component root
  /// or a vertex of an earlier path) and v_p is a subforest leaf.
  std::vector<std::vector<VertexId>> paths;
  /// source .. sink in the tree; {source} when they coincide.
  std::vector<VertexId> anchor_path;
};

/// Splits the subforest edges into leaf-terminated paths. Leaves are taken
/// in vertex-id order; each path runs from its leaf toward the vertex of its
/// component nearest `source`, stopping at the first already-covered vertex.
/// Throws UsageError when the edges are not a forest in the graph.
PathDecomposition partition_forest_paths(const TemporalCostGraph& g,
                                         const std::vector<Edge>& subforest, VertexId source,
                                         VertexId sink);

struct SubforestOptions {
  std::size_t max_paths = 4;
};

/// Tree where every edge outside `subforest` has traversal number <= 3.
/// Throws NotApplicable, or CapabilityError when the decomposition has more
/// than max_paths paths.
SolveResult solve_subforest(const Instance& inst, const std::vector<Edge>& subforest,
                            const SubforestOptions& options = {});

/// At most three distinct finite triples per vertex; every vertex other than
/// the source and sink is then entered at most once. Throws NotApplicable.
SolveResult solve_sparse_triples(const Instance& inst);

}  // namespace ccto
