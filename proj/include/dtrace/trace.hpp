#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dtrace/graph.hpp"

namespace dtrace {

/// One traversal of `edge` from `from` to `to`. Loops are always recorded as
/// forward traversals.
struct Step {
  EdgeId edge = 0;
  VertexId from = 0;
  VertexId to = 0;
  friend auto operator<=>(const Step&, const Step&) = default;
};

using Walk = std::vector<Step>;

/// A closed walk stored as its step sequence. Validity against a host is a
/// separate check (validate_double_trace); the host is passed explicitly to
/// every operation.
struct DoubleTrace {
  Walk steps;
  std::size_t length() const { return steps.size(); }
  friend bool operator==(const DoubleTrace&, const DoubleTrace&) = default;
};

/// The edge set E that must be antiparallel; every other edge is parallel.
struct RestrictionSet {
  EdgeSet antiparallel;
  std::vector<bool> mask(int edge_count) const;
  static RestrictionSet from_mask(const std::vector<bool>& mask);
};

enum class Direction { Parallel, Antiparallel };

/// Step along e leaving `from`; the traversal is forward when it leaves via u.
Step step_from(const Multigraph& g, EdgeId e, VertexId from);
bool is_forward(const Multigraph& g, const Step& s);

Walk reversed(std::span<const Step> w);
Walk rotated(std::span<const Step> w, std::size_t k);
bool is_closed_walk(const Multigraph& g, std::span<const Step> w);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
  std::vector<EdgeId> bad_edges;
  std::vector<std::size_t> bad_positions;
};

ValidationReport validate_double_trace(const Multigraph& g, std::span<const Step> w);

/// Throws InputError when `w` is not a double trace of `g`.
void require_double_trace(const Multigraph& g, std::span<const Step> w);

std::vector<Direction> classify_directions(const Multigraph& g, std::span<const Step> w);

/// End of an edge at a vertex: side 0 is Link::u, side 1 is Link::v.
struct EdgeEnd {
  EdgeId edge = 0;
  int side = 0;
  friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

/// A connected component of the transition multigraph at a vertex. For simple
/// hosts `neighbors` is the neighbor set N; for multigraphs the edge ends are
/// the meaningful unit.
struct TransitionComponent {
  std::vector<EdgeEnd> ends;
  std::vector<VertexId> neighbors;
  std::size_t size() const { return ends.size(); }
};

/// Transition components at every vertex, ordered by their smallest edge end.
class TransitionSystem {
 public:
  TransitionSystem(const Multigraph& g, std::span<const Step> w);

  std::span<const TransitionComponent> at(VertexId v) const { return per_vertex_[static_cast<std::size_t>(v)]; }
  /// Sum over vertices with at least two components of their component count.
  int nontrivial_count() const;
  /// Smallest nonempty repetition at v, i.e. the smallest component; 0 for an
  /// isolated vertex.
  std::size_t smallest_repetition(VertexId v) const;

 private:
  std::vector<std::vector<TransitionComponent>> per_vertex_;
};

std::vector<TransitionComponent> repetition_components(const Multigraph& g, std::span<const Step> w, VertexId v);
bool is_strong(const Multigraph& g, std::span<const Step> w);
/// No repetition N (trivial or not) with 1 <= |N| <= d at any vertex. The full
/// neighbourhood always repeats, so this forces every degree above d.
bool is_d_stable(const Multigraph& g, std::span<const Step> w, int d);
bool check_restriction(const Multigraph& g, std::span<const Step> w, const RestrictionSet& r);
/// Every edge in `arcs` traversed twice from Link::u to Link::v.
bool respects_arcs(const Multigraph& g, std::span<const Step> w, std::span<const EdgeId> arcs);

/// Per direction multiset of traversals, as a sorted (edge, forward) list.
std::vector<std::pair<EdgeId, bool>> direction_multiset(const Multigraph& g, std::span<const Step> w);

}  // namespace dtrace
