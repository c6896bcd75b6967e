#include "dtrace/feasibility.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "dtrace/errors.hpp"

namespace dtrace {

namespace {

void require_connected(const Multigraph& g) {
  if (!g.is_connected()) throw PreconditionError("graph is not connected; every characterization assumes connectivity");
}

std::string delta_condition(const Multigraph& g, int d) {
  std::ostringstream os;
  os << "min degree " << g.min_degree() << (g.min_degree() > d ? " > " : " <= ") << "d = " << d;
  return os.str();
}

FeasibilityAnswer decided(bool verdict, std::string condition) {
  FeasibilityAnswer a;
  a.verdict = verdict;
  (verdict ? a.satisfied : a.violated).push_back(std::move(condition));
  return a;
}

std::vector<bool> degree_witness(const Multigraph& g, int threshold) {
  std::vector<bool> w(static_cast<std::size_t>(g.vertex_count()), false);
  for (VertexId v = 0; v < g.vertex_count(); ++v) w[v] = g.degree(v) >= threshold;
  return w;
}

EdgeSet complement(const Multigraph& g, const std::vector<bool>& mask) {
  EdgeSet out;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!mask[e]) out.push_back(e);
  return out;
}

// Admissible tree of the simplified quotient G' = simplify(G / P). Contracted
// vertices always witness; with a finite `degree_threshold` quotient vertices
// of at least that degree witness too (tried only when contracted ones fail).
std::optional<QuotientCertificate> quotient_tree(const Multigraph& host, const EdgeSet& parallel,
                                                 int degree_threshold, const TreeSearchLimits& limits) {
  QuotientCertificate qc;
  qc.parallel_edges = parallel;
  qc.contraction = contract(host, parallel);
  qc.simplified = simplify_multigraph(qc.contraction.quotient);
  qc.witness = lift_witness(qc.simplified, qc.contraction.contracted_vertex);
  if (auto tree = find_admissible_tree(qc.simplified.graph, qc.witness, limits)) {
    qc.tree = std::move(*tree);
    return qc;
  }
  if (degree_threshold == INT_MAX) return std::nullopt;
  std::vector<bool> widened = qc.contraction.contracted_vertex;
  for (VertexId v = 0; v < qc.contraction.quotient.vertex_count(); ++v)
    if (qc.contraction.quotient.degree(v) >= degree_threshold) widened[v] = true;
  qc.witness = lift_witness(qc.simplified, widened);
  if (auto tree = find_admissible_tree(qc.simplified.graph, qc.witness, limits)) {
    qc.tree = std::move(*tree);
    qc.contracted_witnesses_only = false;
    return qc;
  }
  return std::nullopt;
}

FeasibilityAnswer restricted_tree_answer(FeasibilityAnswer a, const Multigraph& host, const EdgeSet& parallel,
                                         int degree_threshold, const TreeSearchLimits& limits) {
  auto qc = quotient_tree(host, parallel, degree_threshold, limits);
  const std::string what = degree_threshold == INT_MAX
                               ? "admissible spanning tree of the quotient (odd co-tree components contain a "
                                 "contracted vertex)"
                               : "admissible spanning tree of the quotient (odd co-tree components contain a "
                                 "contracted vertex or a vertex of quotient degree >= " +
                                     std::to_string(degree_threshold) + ")";
  if (!qc) {
    a.verdict = false;
    a.violated.push_back("no " + what);
    return a;
  }
  a.satisfied.push_back(what);
  a.quotient = std::move(qc);
  return a;
}

FeasibilityAnswer antiparallel_tree_answer(FeasibilityAnswer a, const Graph& g, std::vector<bool> witness,
                                           const std::string& what, const TreeSearchLimits& limits) {
  auto tree = find_admissible_tree(g, witness, limits);
  if (!tree) {
    a.verdict = false;
    a.violated.push_back("no spanning tree whose co-tree components are " + what);
    return a;
  }
  a.satisfied.push_back("spanning tree whose co-tree components are " + what);
  a.tree = std::move(tree);
  a.tree_witness = std::move(witness);
  return a;
}

// Mixed-graph component of the parallel fragment, relabelled to 0..k-1.
MixedGraph component_as_mixed(const MixedGraph& b, const Component& c) {
  std::vector<VertexId> local(static_cast<std::size_t>(b.vertex_count()), -1);
  for (std::size_t i = 0; i < c.vertices.size(); ++i) local[c.vertices[i]] = static_cast<VertexId>(i);
  std::vector<MixedLink> links;
  for (EdgeId e : c.edges) {
    const MixedLink& l = b.link(e);
    links.push_back({local[l.u], local[l.v], l.arc});
  }
  return MixedGraph(static_cast<int>(c.vertices.size()), std::move(links));
}

FeasibilityAnswer mixed_answer(const MixedGraph& b, const RestrictionSet& r, int d, const TreeSearchLimits& limits) {
  require_connected(b.underlying());
  const Multigraph& host = b.underlying();
  const std::vector<bool> anti = r.mask(b.link_count());
  for (EdgeId e : r.antiparallel)
    if (b.is_arc(e)) throw InputError("restriction names arc " + std::to_string(e) + "; arcs are always parallel");

  FeasibilityAnswer a;
  a.verdict = true;
  if (d > 0) {
    if (host.min_degree() <= d) {
      a.verdict = false;
      a.violated.push_back(delta_condition(host, d));
      return a;
    }
    a.satisfied.push_back(delta_condition(host, d));
  }
  const EdgeSet parallel = complement(host, anti);
  const ComponentReport parts = components_with_parity(host, induced_edge_subgraph(host, parallel));
  for (std::size_t i = 0; i < parts.components.size(); ++i) {
    if (!mixed_euler_feasible(component_as_mixed(b, parts.components[i]))) {
      a.verdict = false;
      a.violated.push_back("component " + std::to_string(i) +
                           " of the parallel-and-arc fragment has no direction-respecting Euler tour");
    }
  }
  if (!a.verdict) return a;
  a.satisfied.push_back("every component of the parallel-and-arc fragment has a direction-respecting Euler tour");
  return restricted_tree_answer(std::move(a), host, parallel, d > 0 ? 2 * d + 2 : INT_MAX, limits);
}

}  // namespace

FeasibilityAnswer has_strong_trace(const Graph& g) {
  require_connected(g);
  return decided(true, "connected");
}

FeasibilityAnswer has_d_stable_trace(const Graph& g, int d) {
  require_connected(g);
  return decided(g.min_degree() > d, delta_condition(g, d));
}

FeasibilityAnswer has_antiparallel_strong_trace(const Graph& g, const TreeSearchLimits& limits) {
  require_connected(g);
  FeasibilityAnswer a;
  a.verdict = true;
  return antiparallel_tree_answer(std::move(a), g, std::vector<bool>(static_cast<std::size_t>(g.vertex_count()), false),
                                  "all even", limits);
}

FeasibilityAnswer has_antiparallel_d_stable_trace(const Graph& g, int d, const TreeSearchLimits& limits) {
  require_connected(g);
  FeasibilityAnswer a;
  a.verdict = true;
  if (g.min_degree() <= d) return decided(false, delta_condition(g, d));
  a.satisfied.push_back(delta_condition(g, d));
  return antiparallel_tree_answer(std::move(a), g, degree_witness(g, 2 * d + 2),
                                  "even or contain a vertex of degree >= " + std::to_string(2 * d + 2), limits);
}

FeasibilityAnswer has_parallel_strong_trace(const Graph& g) {
  require_connected(g);
  return decided(is_even_subgraph(g, whole_graph(g)), "all degrees even");
}

FeasibilityAnswer has_parallel_d_stable_trace(const Graph& g, int d) {
  require_connected(g);
  FeasibilityAnswer a = has_parallel_strong_trace(g);
  const bool delta_ok = g.min_degree() > d;
  (delta_ok ? a.satisfied : a.violated).push_back(delta_condition(g, d));
  a.verdict = a.verdict && delta_ok;
  return a;
}

FeasibilityAnswer has_E_restricted_double_trace(const Graph& g, const RestrictionSet& r) {
  require_connected(g);
  const EdgeSet parallel = complement(g, r.mask(g.edge_count()));
  return decided(is_even_subgraph(g, induced_edge_subgraph(g, parallel)), "G - E is an even graph");
}

FeasibilityAnswer has_E_restricted_strong_trace(const Graph& g, const RestrictionSet& r,
                                                const TreeSearchLimits& limits) {
  require_connected(g);
  const EdgeSet parallel = complement(g, r.mask(g.edge_count()));
  if (!is_even_subgraph(g, induced_edge_subgraph(g, parallel)))
    return decided(false, "subgraph induced by the parallel edges is not even");
  FeasibilityAnswer a;
  a.verdict = true;
  a.satisfied.push_back("subgraph induced by the parallel edges is even");
  return restricted_tree_answer(std::move(a), g, parallel, INT_MAX, limits);
}

FeasibilityAnswer has_E_restricted_d_stable_trace(const Graph& g, const RestrictionSet& r, int d,
                                                  const TreeSearchLimits& limits) {
  require_connected(g);
  if (g.min_degree() <= d) return decided(false, delta_condition(g, d));
  const EdgeSet parallel = complement(g, r.mask(g.edge_count()));
  if (!is_even_subgraph(g, induced_edge_subgraph(g, parallel)))
    return decided(false, "subgraph induced by the parallel edges is not even");
  FeasibilityAnswer a;
  a.verdict = true;
  a.satisfied.push_back(delta_condition(g, d));
  a.satisfied.push_back("subgraph induced by the parallel edges is even");
  return restricted_tree_answer(std::move(a), g, parallel, 2 * d + 2, limits);
}

std::optional<SpanningTreeCertificate> quotient_tree_direct(const Graph& g, const RestrictionSet& r,
                                                            const TreeSearchLimits& limits) {
  require_connected(g);
  const ContractionMap cm = contract(g, complement(g, r.mask(g.edge_count())));
  return find_admissible_tree(cm.quotient, cm.contracted_vertex, limits);
}

std::optional<std::vector<bool>> balanced_orientation(const MixedGraph& b) {
  const Multigraph& h = b.underlying();
  const int n = h.vertex_count();
  std::vector<bool> forward(static_cast<std::size_t>(b.link_count()), true);
  std::vector<int> surplus(static_cast<std::size_t>(n), 0);  // out - in
  for (const Link& l : h.edges()) {
    ++surplus[l.u];
    --surplus[l.v];
  }
  for (int s : surplus)
    if (s % 2 != 0) return std::nullopt;

  // Reversing an undirected link x->y moves 2 units of surplus from x to y.
  for (;;) {
    VertexId source = -1;
    for (VertexId v = 0; v < n && source < 0; ++v)
      if (surplus[v] > 0) source = v;
    if (source < 0) return forward;

    std::vector<EdgeId> via(static_cast<std::size_t>(n), -1);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<VertexId> queue{source};
    seen[source] = true;
    VertexId sink = -1;
    for (std::size_t qi = 0; qi < queue.size() && sink < 0; ++qi) {
      const VertexId x = queue[qi];
      for (EdgeId e : h.incident(x)) {
        if (b.is_arc(e)) continue;
        const Link& l = h.edge(e);
        const VertexId tail = forward[e] ? l.u : l.v;
        const VertexId head = forward[e] ? l.v : l.u;
        if (tail != x || seen[head]) continue;
        seen[head] = true;
        via[head] = e;
        if (surplus[head] < 0) {
          sink = head;
          break;
        }
        queue.push_back(head);
      }
    }
    if (sink < 0) return std::nullopt;
    for (VertexId y = sink; y != source;) {
      const EdgeId e = via[y];
      const Link& l = h.edge(e);
      const VertexId tail = forward[e] ? l.u : l.v;
      forward[e] = !forward[e];
      y = tail;
    }
    surplus[source] -= 2;
    surplus[sink] += 2;
  }
}

bool mixed_euler_feasible(const MixedGraph& b) {
  if (!b.is_weakly_connected()) throw PreconditionError("mixed graph is not weakly connected");
  return balanced_orientation(b).has_value();
}

bool mixed_euler_subset_condition(const MixedGraph& b) {
  const int n = b.vertex_count();
  if (n > 16) throw CapacityError("subset condition limited to 16 vertices");
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    int cut_edges = 0, arcs_out = 0, arcs_in = 0;
    for (const MixedLink& l : b.links()) {
      const bool in_u = (mask >> l.u) & 1u, in_v = (mask >> l.v) & 1u;
      if (in_u == in_v) continue;
      if (!l.arc) ++cut_edges;
      else if (in_u) ++arcs_out;
      else ++arcs_in;
    }
    const int f = cut_edges - std::abs(arcs_out - arcs_in);
    if (f < 0 || f % 2 != 0) return false;
  }
  return true;
}

FeasibilityAnswer has_E_restricted_strong_trace_mixed(const MixedGraph& b, const RestrictionSet& r,
                                                      const TreeSearchLimits& limits) {
  return mixed_answer(b, r, 0, limits);
}

FeasibilityAnswer has_E_restricted_d_stable_trace_mixed(const MixedGraph& b, const RestrictionSet& r, int d,
                                                        const TreeSearchLimits& limits) {
  if (d <= 0) throw InputError("d must be positive");
  return mixed_answer(b, r, d, limits);
}

}  // namespace dtrace
