#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace dtrace {

using VertexId = int;
using EdgeId = int;
using EdgeSet = std::vector<EdgeId>;

/// An edge as an (ordered) endpoint pair. The order fixes what "forward"
/// means for traversals; it carries no orientation for undirected edges.
struct Link {
  VertexId u = 0;
  VertexId v = 0;
  friend bool operator==(const Link&, const Link&) = default;
};

/// Vertices 0..n-1 and an indexed edge list. Loops and parallel edges are
/// allowed; edge identity is the position in the list.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int vertex_count, std::vector<Link> edges = {});

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Link& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  std::span<const Link> edges() const { return edges_; }

  /// Incident edge ids of v; a loop at v is listed twice.
  std::span<const EdgeId> incident(VertexId v) const { return incidence_[static_cast<std::size_t>(v)]; }
  int degree(VertexId v) const { return static_cast<int>(incidence_[static_cast<std::size_t>(v)].size()); }
  int min_degree() const;
  int max_degree() const;

  /// Endpoint of e opposite to v (v itself for loops).
  VertexId other(EdgeId e, VertexId v) const;
  bool is_loop(EdgeId e) const { return edge(e).u == edge(e).v; }
  bool valid_vertex(VertexId v) const { return v >= 0 && v < n_; }
  bool valid_edge(EdgeId e) const { return e >= 0 && e < edge_count(); }

  bool is_simple() const;
  bool is_connected() const;
  /// Connected after discarding isolated vertices.
  bool edges_connected() const;

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Link> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
};

/// Simple graph: no loops, no repeated vertex pairs.
class Graph : public Multigraph {
 public:
  Graph() = default;
  /// Throws InputError when the edge list is not simple.
  explicit Graph(int vertex_count, std::vector<Link> edges = {});

  std::optional<EdgeId> edge_between(VertexId a, VertexId b) const;
  bool adjacent(VertexId a, VertexId b) const { return edge_between(a, b).has_value(); }
  std::vector<VertexId> neighbors(VertexId v) const;

  /// Applies a vertex permutation; edge i of the result is the image of edge i.
  Graph relabeled(std::span<const VertexId> perm) const;

 private:
  std::vector<std::vector<EdgeId>> matrix_;
};

/// An undirected edge or an arc (u -> v) of a mixed graph.
struct MixedLink {
  VertexId u = 0;
  VertexId v = 0;
  bool arc = false;
  friend bool operator==(const MixedLink&, const MixedLink&) = default;
};

/// Mixed graph. Edges and arcs share one index space (file order). Loops are
/// rejected; an arc may run parallel to an undirected edge.
class MixedGraph {
 public:
  MixedGraph() = default;
  explicit MixedGraph(int vertex_count, std::vector<MixedLink> links = {});

  int vertex_count() const { return underlying_.vertex_count(); }
  int link_count() const { return static_cast<int>(links_.size()); }
  const MixedLink& link(EdgeId e) const { return links_.at(static_cast<std::size_t>(e)); }
  std::span<const MixedLink> links() const { return links_; }
  bool is_arc(EdgeId e) const { return link(e).arc; }
  EdgeSet arcs() const;
  EdgeSet undirected_edges() const;

  /// Underlying multigraph; arcs keep their tail as Link::u.
  const Multigraph& underlying() const { return underlying_; }
  bool is_weakly_connected() const { return underlying_.is_connected(); }
  /// Undirected degree plus in- plus out-degree.
  int min_degree() const { return underlying_.min_degree(); }

  friend bool operator==(const MixedGraph& a, const MixedGraph& b) { return a.links_ == b.links_ && a.vertex_count() == b.vertex_count(); }

 private:
  std::vector<MixedLink> links_;
  Multigraph underlying_;
};

/// Edges of an edge-induced subgraph together with the vertices they touch.
struct Fragment {
  std::vector<VertexId> vertices;
  EdgeSet edges;
};

Fragment induced_edge_subgraph(const Multigraph& g, std::span<const EdgeId> edge_set);
Fragment whole_graph(const Multigraph& g);
bool is_even_subgraph(const Multigraph& g, const Fragment& fragment);

struct Component {
  std::vector<VertexId> vertices;
  EdgeSet edges;
  bool odd = false;
  bool has_witness = false;
};

struct ComponentReport {
  std::vector<Component> components;
  int odd_count() const;
  int edge_total() const;
};

/// Connected components of the fragment (edge-induced, so every component
/// carries at least one edge). `witness` is indexed by host vertex; empty
/// means no witnesses.
ComponentReport components_with_parity(const Multigraph& g, const Fragment& fragment,
                                       const std::vector<bool>& witness = {});

/// G/E': every connected component of the subgraph induced by `contracted`
/// collapses to one marked vertex; all other edges survive, possibly as
/// loops or parallel edges.
struct ContractionMap {
  Multigraph quotient;
  std::vector<VertexId> vertex_image;    // host vertex -> quotient vertex
  std::vector<bool> contracted_vertex;   // per quotient vertex
  std::vector<EdgeId> edge_origin;       // quotient edge -> host edge
  std::vector<EdgeId> edge_image;        // host edge -> quotient edge, -1 if contracted
};

ContractionMap contract(const Multigraph& g, std::span<const EdgeId> contracted);

/// Every loop becomes a path of length 3 and every member of a parallel
/// class a path of length 2. Midpoint vertices are appended after the
/// original vertices.
struct Simplification {
  Graph graph;
  std::vector<EdgeId> edge_origin;     // simple edge -> multigraph edge
  std::vector<int> path_position;      // 0-based position along the path, 0 for kept edges
  std::vector<int> path_length;        // per multigraph edge: 1, 2 or 3
  std::vector<VertexId> vertex_origin; // simple vertex -> multigraph vertex, -1 for midpoints
};

Simplification simplify_multigraph(const Multigraph& m);

/// Witness flags lifted through a simplification; midpoints never witness.
std::vector<bool> lift_witness(const Simplification& s, const std::vector<bool>& witness);

/// All adjacency-preserving vertex permutations (perm[v] = image of v).
std::vector<std::vector<VertexId>> automorphisms(const Graph& g, int max_vertices = 10);

}  // namespace dtrace
