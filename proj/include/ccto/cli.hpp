#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ccto/graph.hpp"
#include "ccto/result.hpp"
#include "ccto/vitw.hpp"

namespace ccto {

struct EdgeTraversal {
  Edge edge;
  std::size_t number = 0;
};

/// Structural summary of an instance; the input of auto dispatch.
struct AnalyzeReport {
  std::size_t n = 0;
  TimeStep lifetime = 0;
  std::vector<EdgeTraversal> traversal;
  std::optional<VitwSequence> bags;  // absent above 64 vertices
  bool connected = true;
  bool has_query = false;
  Query query;
  std::uint64_t colourings = 0;  // exhaustive colour-coding count
  /// Solver name -> empty when applicable, otherwise the reason.
  std::map<std::string, std::string> applicability;

  bool applies(const std::string& solver) const {
    auto it = applicability.find(solver);
    return it != applicability.end() && it->second.empty();
  }
  std::uint32_t phi() const { return bags ? bags->width : UINT32_MAX; }
};

AnalyzeReport analyze(const TemporalCostGraph& g, const std::optional<Query>& query,
                      const std::vector<Edge>& subforest = {});

/// Positive integer costs: a walk with k distinct vertices pays for at least
/// k-1 hops, so k > budget + 1 is a no without search.
std::optional<SolveResult> budget_bound_rule(const Instance& inst);

/// Solver the `auto` algorithm picks for this report: one of oracle, sparse,
/// tree, vitw, colorcoding-exhaustive, colorcoding-randomized.
std::string auto_choice(const AnalyzeReport& report);

/// Entry point; args exclude the program name. Returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccto
