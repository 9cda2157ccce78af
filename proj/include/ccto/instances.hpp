#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccto/graph.hpp"

namespace ccto {

/// Text instance document. Grammar, one item per line:
///   version 1
///   n <int>
///   name <id> <text>                 (optional, repeatable)
///   tuple <from> <to> <depart> <arrive> <cost>
///   query <source> <sink> <k> <budget>   (optional, at most once)
///   subforest <u> <v>                (optional, repeatable)
/// Blank lines and lines starting with '#' are ignored.
struct InstanceFile {
  int version = 1;
  std::size_t n = 0;
  std::vector<std::string> names;  // empty, or one per vertex
  std::vector<CostTuple> tuples;
  std::optional<Query> query;
  std::vector<Edge> subforest;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

/// Throws ParseError naming the 1-based line.
InstanceFile parse_instance(const std::string& text);
std::string serialize_instance(const InstanceFile& file);
/// Reads and parses a file; ParseError (line 0) when it cannot be opened.
InstanceFile load_instance(const std::string& path);

TemporalCostGraph to_graph(const InstanceFile& file);
/// Throws UsageError when the file has no query.
Instance to_instance(const InstanceFile& file);
InstanceFile to_file(const Instance& inst, const std::vector<Edge>& subforest = {});

/// Edge {u,v} active at every time in its label set.
struct LabelledEdge {
  VertexId u = 0;
  VertexId v = 0;
  std::set<TimeStep> labels;
};

/// Cost 1, duration 1 tuples in both directions for each label.
TemporalCostGraph from_temporal_graph(std::size_t n, const std::vector<LabelledEdge>& edges);

/// Star with centre 0 and leaves 1..leaves; labels[i] belongs to leaf i+1.
struct TemporalStar {
  std::vector<std::set<TimeStep>> labels;

  std::size_t leaves() const { return labels.size(); }
};

/// Centre is both source and sink, k = leaves+1, budget 2*leaves.
Instance starexp_reduction(const TemporalStar& star);

enum class Shape { general, tree };

struct RandomSpec {
  std::uint64_t seed = 0;
  std::size_t n = 4;
  TimeStep horizon = 5;
  double density = 0.3;  // per (ordered pair or tree arc, depart < arrive)
  std::uint64_t max_cost = 5;
  Shape shape = Shape::general;
  /// Largest arrive - depart generated; 0 means no limit.
  TimeStep max_duration = 0;
};

/// Deterministic given the seed. When n <= 10 the budget is placed within one of
/// the oracle optimum (or drawn from [0, 2n * max_cost] otherwise).
Instance random_instance(const RandomSpec& spec);

}  // namespace ccto
