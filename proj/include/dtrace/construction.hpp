#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dtrace/feasibility.hpp"
#include "dtrace/graph.hpp"
#include "dtrace/trace.hpp"

namespace dtrace {

/// Open or closed walks produced by cutting the quotient trace at contracted
/// vertices and lifting it back to the host.
struct WalkFamily {
  std::vector<Walk> walks;
  std::vector<bool> closed;
  std::size_t closed_count() const;
};

/// Closed walk using every fragment edge once (Hierholzer). Starts at the
/// lowest fragment vertex; empty for an edgeless fragment.
Walk euler_tour(const Multigraph& g, const Fragment& fragment);

/// Directed variant: `forward[e]` fixes each edge's orientation.
Walk directed_euler_tour(const Multigraph& g, const Fragment& fragment, const std::vector<bool>& forward);

/// Euler tour traversed twice, then repetition surgery until strong. Every
/// edge ends up parallel.
DoubleTrace parallel_strong_trace(const Graph& g);

/// Splices w2 into w1 at the first occurrence of v in each.
Walk merge_closed_walks(std::span<const Step> w1, std::span<const Step> w2, VertexId v);

/// Interchanges two interior subwalks at v so that two transition components
/// at v merge. Traversal directions and transitions at other vertices are
/// unchanged. Throws PreconditionError when v has a single component or no
/// edge at v is traversed twice in the same direction.
DoubleTrace reduce_repetition(const Multigraph& g, std::span<const Step> w, VertexId v);

/// Boundary walk of a spanning tree (children in edge-index order).
Walk tree_boundary_walk(const Multigraph& g, std::span<const EdgeId> tree_edges, VertexId root = 0);

/// Antiparallel strong trace from a certificate whose co-tree components are
/// all even. Co-tree edges are paired at shared vertices and each pair is
/// inserted into the single face of the tree walk.
DoubleTrace antiparallel_strong_trace(const Multigraph& g, const SpanningTreeCertificate& cert);

/// Antiparallel double trace whose nontrivial repetitions sit only at
/// witness vertices: one witness per odd co-tree component is split off,
/// the resulting graph gets an antiparallel strong trace, and the split is
/// undone.
DoubleTrace antiparallel_double_trace_with_repetitions_in(const Multigraph& g, const std::vector<bool>& witness,
                                                          const SpanningTreeCertificate& cert);

/// Strong trace of any connected graph: tree walk plus twisted insertion of
/// every co-tree edge into the single face.
DoubleTrace strong_trace(const Graph& g);

/// Intermediate stages of the restricted pipeline, for inspection.
struct PipelineStages {
  Walk quotient_trace;       // on the simplified quotient
  Walk lifted;               // antiparallel steps lifted to the host, uncut
  WalkFamily family;         // cut at contracted vertices
  std::vector<Walk> parallel_traces;
  std::size_t merges = 0;
  std::size_t surgeries = 0;
};

/// Every edge in `arcs` (a subset of the parallel edges) is traversed in its
/// forward direction. Throws PreconditionError when `cert` is for a false
/// verdict and InternalError if a guaranteed step fails.
DoubleTrace restricted_pipeline(const Multigraph& host, const std::vector<bool>& antiparallel,
                                const std::vector<bool>& arcs, const QuotientCertificate& cert,
                                PipelineStages* stages = nullptr, bool require_strong = true);

DoubleTrace build_E_restricted_double_trace(const Graph& g, const RestrictionSet& r);
DoubleTrace build_E_restricted_strong_trace(const Graph& g, const RestrictionSet& r, PipelineStages* stages = nullptr);
DoubleTrace build_E_restricted_d_stable_trace(const Graph& g, const RestrictionSet& r, int d);
DoubleTrace build_d_stable_trace(const Graph& g, int d);
DoubleTrace build_antiparallel_strong_trace(const Graph& g);
DoubleTrace build_antiparallel_d_stable_trace(const Graph& g, int d);
DoubleTrace build_parallel_d_stable_trace(const Graph& g, int d);
/// Strong (d = nullopt) or d-stable E-restricted trace of a mixed graph with
/// every arc traversed twice in its direction.
DoubleTrace build_mixed_trace(const MixedGraph& b, const RestrictionSet& r, std::optional<int> d = std::nullopt);

}  // namespace dtrace
