#include "ccto/expanded.hpp"

#include <algorithm>
#include <cassert>

#include "ccto/errors.hpp"

namespace ccto {

void Dag::add_arc(std::uint32_t tail, std::uint32_t head, Cost weight, std::int64_t tag) {
  assert(!sealed_);
  if (head <= tail) throw std::logic_error("Dag arc must increase node id");
  if (tail < last_tail_) throw std::logic_error("Dag arcs must be added in tail order");
  if (head >= node_count()) throw std::logic_error("Dag arc head out of range");
  last_tail_ = tail;
  ++offsets_[tail + 1];
  arcs_.push_back({head, weight, tag});
}

void Dag::seal() {
  if (sealed_) return;
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  sealed_ = true;
}

DagPath dag_shortest_path(const Dag& dag, std::uint32_t src, std::uint32_t dst) {
  DagPath out;
  if (src >= dag.node_count() || dst >= dag.node_count() || dst < src) return out;
  const std::size_t span = dst - src + 1;
  std::vector<Cost> dist(span, Cost::infinite());
  std::vector<std::uint32_t> pred(span, 0);
  std::vector<std::int64_t> pred_tag(span, Dag::kNoTag);
  dist[0] = Cost::zero();
  for (std::uint32_t v = src; v < dst; ++v) {
    Cost dv = dist[v - src];
    if (dv.is_infinite()) continue;
    ++out.relaxed_nodes;
    for (const auto& a : dag.arcs_from(v)) {
      if (a.head > dst) continue;
      Cost cand = dv + a.weight;
      auto& slot = dist[a.head - src];
      if (cand < slot) {
        slot = cand;
        pred[a.head - src] = v;
        pred_tag[a.head - src] = a.tag;
      }
    }
  }
  out.cost = dist[span - 1];
  if (out.cost.is_infinite()) return out;
  for (std::uint32_t v = dst;; v = pred[v - src]) {
    out.nodes.push_back(v);
    if (v == src) break;
    out.arc_tags.push_back(pred_tag[v - src]);
  }
  std::reverse(out.nodes.begin(), out.nodes.end());
  std::reverse(out.arc_tags.begin(), out.arc_tags.end());
  return out;
}

ExpandedGraph::ExpandedGraph(const TemporalCostGraph& g)
    : graph_(&g), n_(g.vertex_count()), horizon_(g.lifetime()), dag_(n_ * (horizon_ + 1)) {
  // Node id t*n + v; tuples grouped by tail (from, depart) via outgoing order.
  std::vector<std::vector<std::uint32_t>> by_tail(dag_.node_count());
  for (std::uint32_t i = 0; i < g.tuples().size(); ++i) {
    const auto& t = g.tuples()[i];
    by_tail[node({t.from, t.depart})].push_back(i);
  }
  for (std::uint32_t id = 0; id < dag_.node_count(); ++id) {
    auto [v, t] = vertex(id);
    if (t < horizon_) dag_.add_arc(id, node({v, t + 1}), Cost::zero());
    for (auto i : by_tail[id]) {
      const auto& tup = g.tuples()[i];
      dag_.add_arc(id, node({tup.to, tup.arrive}), tup.cost, i);
    }
  }
  dag_.seal();
}

std::uint32_t ExpandedGraph::node(ExpandedVertex v) const {
  if (v.vertex >= n_ || v.time > horizon_) throw UsageError("expanded vertex out of range");
  return static_cast<std::uint32_t>(v.time * n_ + v.vertex);
}

ExpandedVertex ExpandedGraph::vertex(std::uint32_t node) const {
  return {static_cast<VertexId>(node % n_), static_cast<TimeStep>(node / n_)};
}

std::vector<ExpandedArc> ExpandedGraph::arcs() const {
  std::vector<ExpandedArc> out;
  out.reserve(arc_count());
  for (std::uint32_t id = 0; id < dag_.node_count(); ++id) {
    for (const auto& a : dag_.arcs_from(id)) out.push_back({vertex(id), vertex(a.head), a.weight});
  }
  return out;
}

void ExpandedGraph::write_text(std::ostream& os) const {
  for (const auto& a : arcs()) {
    os << a.from.vertex << ' ' << a.from.time << ' ' << a.to.vertex << ' ' << a.to.time << ' '
       << a.weight << '\n';
  }
}

ExpandedGraph build_time_expanded(const TemporalCostGraph& g) { return ExpandedGraph(g); }

ExpandedPath dag_min_cost_path(const ExpandedGraph& dag, ExpandedVertex src, ExpandedVertex dst) {
  ExpandedPath out;
  if (dst.time < src.time) return out;
  auto path = dag_shortest_path(dag.dag(), dag.node(src), dag.node(dst));
  out.cost = path.cost;
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    auto from = dag.vertex(path.nodes[i]);
    auto to = dag.vertex(path.nodes[i + 1]);
    auto tag = path.arc_tags[i];
    Cost w = tag == Dag::kNoTag ? Cost::zero() : dag.graph().tuples()[tag].cost;
    out.arcs.push_back({from, to, w});
    if (tag != Dag::kNoTag) out.walk.steps.push_back(dag.graph().tuples()[tag].traversal());
  }
  return out;
}

}  // namespace ccto
