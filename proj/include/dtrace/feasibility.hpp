#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dtrace/graph.hpp"
#include "dtrace/trace.hpp"

namespace dtrace {

/// Spanning tree T of a host plus the analysis of its co-tree G - E(T).
/// `deficiency` is the number of odd co-tree components.
struct SpanningTreeCertificate {
  EdgeSet tree_edges;
  ComponentReport co_tree;
  int deficiency = 0;
};

/// Limits for find_admissible_tree. Inside the exact range the search is
/// always run to completion; outside it the search may still succeed, but
/// exhausting `node_budget` raises CapacityError instead of answering "none".
struct TreeSearchLimits {
  int max_vertices = 12;
  int max_cotree_rank = 16;
  long long node_budget = 5'000'000;
};

/// A spanning tree whose co-tree components are each even or contain a
/// vertex with `witness[v]` set; std::nullopt when none exists.
std::optional<SpanningTreeCertificate> find_admissible_tree(const Multigraph& h, const std::vector<bool>& witness,
                                                            const TreeSearchLimits& limits = {});

/// Independent re-check of a certificate: spanning tree property, component
/// report over exactly the non-tree edges, and the per-component condition.
bool certificate_valid(const Multigraph& h, const std::vector<bool>& witness, const SpanningTreeCertificate& cert);

/// Everything needed to rebuild a trace from a positive E-restricted verdict.
struct QuotientCertificate {
  EdgeSet parallel_edges;         // E' (plus arcs for mixed hosts)
  ContractionMap contraction;     // G / E'
  Simplification simplified;      // G' built from G / E'
  std::vector<bool> witness;      // per vertex of G'
  SpanningTreeCertificate tree;   // on G'
  /// True when only contracted vertices were needed as witnesses.
  bool contracted_witnesses_only = true;
};

struct FeasibilityAnswer {
  bool verdict = false;
  std::optional<SpanningTreeCertificate> tree;        // tree on the input graph (antiparallel variants)
  std::optional<QuotientCertificate> quotient;        // restricted variants
  std::optional<std::vector<bool>> tree_witness;       // witness flags used for `tree`
  std::vector<std::string> violated;                  // named failing conditions when verdict is false
  std::vector<std::string> satisfied;                 // named conditions that held
};

FeasibilityAnswer has_strong_trace(const Graph& g);
FeasibilityAnswer has_d_stable_trace(const Graph& g, int d);
FeasibilityAnswer has_antiparallel_strong_trace(const Graph& g, const TreeSearchLimits& limits = {});
FeasibilityAnswer has_antiparallel_d_stable_trace(const Graph& g, int d, const TreeSearchLimits& limits = {});
FeasibilityAnswer has_parallel_strong_trace(const Graph& g);
FeasibilityAnswer has_parallel_d_stable_trace(const Graph& g, int d);
FeasibilityAnswer has_E_restricted_double_trace(const Graph& g, const RestrictionSet& r);
FeasibilityAnswer has_E_restricted_strong_trace(const Graph& g, const RestrictionSet& r,
                                                const TreeSearchLimits& limits = {});
FeasibilityAnswer has_E_restricted_d_stable_trace(const Graph& g, const RestrictionSet& r, int d,
                                                  const TreeSearchLimits& limits = {});

/// Euler tour respecting arc directions exists (balanced orientation of the
/// undirected edges, found by augmenting reorientation paths).
bool mixed_euler_feasible(const MixedGraph& b);

/// Orientation of every link (true = Link::u -> Link::v) balancing in- and
/// out-degree at each vertex, or nullopt. Arcs keep their direction.
std::optional<std::vector<bool>> balanced_orientation(const MixedGraph& b);

/// Exponential check over all X subset of V: e(X) - |a+(X) - a-(X)| is a
/// non-negative even integer, with e, a+, a- counted across the cut.
/// Limited to 16 vertices.
bool mixed_euler_subset_condition(const MixedGraph& b);

FeasibilityAnswer has_E_restricted_strong_trace_mixed(const MixedGraph& b, const RestrictionSet& r,
                                                      const TreeSearchLimits& limits = {});
FeasibilityAnswer has_E_restricted_d_stable_trace_mixed(const MixedGraph& b, const RestrictionSet& r, int d,
                                                        const TreeSearchLimits& limits = {});

/// Route check: the admissible tree searched directly on G / E' (loops and
/// parallel edges kept) instead of on its simplification.
std::optional<SpanningTreeCertificate> quotient_tree_direct(const Graph& g, const RestrictionSet& r,
                                                            const TreeSearchLimits& limits = {});

}  // namespace dtrace
