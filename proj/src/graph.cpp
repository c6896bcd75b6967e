#include "dtrace/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "dtrace/errors.hpp"

namespace dtrace {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Multigraph::Multigraph(int vertex_count, std::vector<Link> edges)
    : n_(vertex_count), edges_(std::move(edges)), incidence_(static_cast<std::size_t>(std::max(vertex_count, 0))) {
  if (vertex_count < 0) throw InputError("negative vertex count");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Link& l = edges_[i];
    if (!valid_vertex(l.u) || !valid_vertex(l.v)) {
      std::ostringstream os;
      os << "edge " << i << " has endpoint outside 0.." << n_ - 1;
      throw InputError(os.str());
    }
    incidence_[l.u].push_back(static_cast<EdgeId>(i));
    incidence_[l.v].push_back(static_cast<EdgeId>(i));
  }
}

int Multigraph::min_degree() const {
  int d = n_ == 0 ? 0 : degree(0);
  for (VertexId v = 1; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

int Multigraph::max_degree() const {
  int d = 0;
  for (VertexId v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

VertexId Multigraph::other(EdgeId e, VertexId v) const {
  const Link& l = edge(e);
  if (l.u == v) return l.v;
  if (l.v == v) return l.u;
  throw InputError("vertex is not an endpoint of the edge");
}

bool Multigraph::is_simple() const {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(edges_.size());
  for (const Link& l : edges_) {
    if (l.u == l.v) return false;
    pairs.emplace_back(std::min(l.u, l.v), std::max(l.u, l.v));
  }
  std::sort(pairs.begin(), pairs.end());
  return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

bool Multigraph::is_connected() const {
  if (n_ <= 1) return true;
  UnionFind uf(n_);
  for (const Link& l : edges_) uf.unite(l.u, l.v);
  const int root = uf.find(0);
  for (VertexId v = 1; v < n_; ++v)
    if (uf.find(v) != root) return false;
  return true;
}

bool Multigraph::edges_connected() const {
  UnionFind uf(n_);
  for (const Link& l : edges_) uf.unite(l.u, l.v);
  int root = -1;
  for (VertexId v = 0; v < n_; ++v) {
    if (degree(v) == 0) continue;
    if (root < 0) root = uf.find(v);
    else if (uf.find(v) != root) return false;
  }
  return true;
}

Graph::Graph(int vertex_count, std::vector<Link> edges) : Multigraph(vertex_count, std::move(edges)) {
  matrix_.assign(static_cast<std::size_t>(vertex_count), std::vector<EdgeId>(static_cast<std::size_t>(vertex_count), -1));
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const Link& l = edge(e);
    if (l.u == l.v) throw InputError("loop at vertex " + std::to_string(l.u) + " in a simple graph");
    if (matrix_[l.u][l.v] >= 0)
      throw InputError("repeated edge " + std::to_string(l.u) + "-" + std::to_string(l.v) + " in a simple graph");
    matrix_[l.u][l.v] = e;
    matrix_[l.v][l.u] = e;
  }
}

std::optional<EdgeId> Graph::edge_between(VertexId a, VertexId b) const {
  if (!valid_vertex(a) || !valid_vertex(b)) return std::nullopt;
  const EdgeId e = matrix_[a][b];
  if (e < 0) return std::nullopt;
  return e;
}

std::vector<VertexId> Graph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (EdgeId e : incident(v)) out.push_back(other(e, v));
  return out;
}

Graph Graph::relabeled(std::span<const VertexId> perm) const {
  if (static_cast<int>(perm.size()) != vertex_count()) throw InputError("permutation size mismatch");
  std::vector<Link> links;
  links.reserve(edges().size());
  for (const Link& l : edges()) links.push_back({perm[l.u], perm[l.v]});
  return Graph(vertex_count(), std::move(links));
}

MixedGraph::MixedGraph(int vertex_count, std::vector<MixedLink> links) : links_(std::move(links)) {
  std::vector<Link> plain;
  plain.reserve(links_.size());
  std::vector<std::pair<int, int>> undirected;
  for (const MixedLink& l : links_) {
    if (l.u == l.v) throw InputError("loops are not allowed in a mixed graph");
    plain.push_back({l.u, l.v});
    if (!l.arc) undirected.emplace_back(std::min(l.u, l.v), std::max(l.u, l.v));
  }
  std::sort(undirected.begin(), undirected.end());
  if (std::adjacent_find(undirected.begin(), undirected.end()) != undirected.end())
    throw InputError("repeated undirected edge in a mixed graph");
  underlying_ = Multigraph(vertex_count, std::move(plain));
}

EdgeSet MixedGraph::arcs() const {
  EdgeSet out;
  for (EdgeId e = 0; e < link_count(); ++e)
    if (links_[e].arc) out.push_back(e);
  return out;
}

EdgeSet MixedGraph::undirected_edges() const {
  EdgeSet out;
  for (EdgeId e = 0; e < link_count(); ++e)
    if (!links_[e].arc) out.push_back(e);
  return out;
}

Fragment induced_edge_subgraph(const Multigraph& g, std::span<const EdgeId> edge_set) {
  Fragment f;
  std::vector<bool> seen_edge(static_cast<std::size_t>(g.edge_count()), false);
  std::vector<bool> seen_vertex(static_cast<std::size_t>(g.vertex_count()), false);
  for (EdgeId e : edge_set) {
    if (!g.valid_edge(e)) throw InputError("edge index " + std::to_string(e) + " out of range");
    if (seen_edge[e]) continue;
    seen_edge[e] = true;
    f.edges.push_back(e);
    seen_vertex[g.edge(e).u] = true;
    seen_vertex[g.edge(e).v] = true;
  }
  std::sort(f.edges.begin(), f.edges.end());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (seen_vertex[v]) f.vertices.push_back(v);
  return f;
}

Fragment whole_graph(const Multigraph& g) {
  EdgeSet all(static_cast<std::size_t>(g.edge_count()));
  std::iota(all.begin(), all.end(), 0);
  return induced_edge_subgraph(g, all);
}

bool is_even_subgraph(const Multigraph& g, const Fragment& fragment) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e : fragment.edges) {
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d % 2 == 0; });
}

int ComponentReport::odd_count() const {
  return static_cast<int>(std::count_if(components.begin(), components.end(), [](const Component& c) { return c.odd; }));
}

int ComponentReport::edge_total() const {
  int total = 0;
  for (const Component& c : components) total += static_cast<int>(c.edges.size());
  return total;
}

ComponentReport components_with_parity(const Multigraph& g, const Fragment& fragment, const std::vector<bool>& witness) {
  UnionFind uf(g.vertex_count());
  for (EdgeId e : fragment.edges) uf.unite(g.edge(e).u, g.edge(e).v);

  // Components are ordered by their lowest edge index.
  std::map<int, std::size_t> slot;
  ComponentReport report;
  for (EdgeId e : fragment.edges) {
    const int root = uf.find(g.edge(e).u);
    auto [it, inserted] = slot.try_emplace(root, report.components.size());
    if (inserted) report.components.emplace_back();
    report.components[it->second].edges.push_back(e);
  }
  for (VertexId v : fragment.vertices) {
    auto it = slot.find(uf.find(v));
    if (it == slot.end()) continue;
    Component& c = report.components[it->second];
    c.vertices.push_back(v);
    if (!witness.empty() && witness[v]) c.has_witness = true;
  }
  for (Component& c : report.components) c.odd = c.edges.size() % 2 == 1;
  return report;
}

ContractionMap contract(const Multigraph& g, std::span<const EdgeId> contracted) {
  const Fragment frag = induced_edge_subgraph(g, contracted);
  std::vector<bool> in_frag(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId e : frag.edges) in_frag[e] = true;

  UnionFind uf(g.vertex_count());
  for (EdgeId e : frag.edges) uf.unite(g.edge(e).u, g.edge(e).v);
  std::vector<bool> touched(static_cast<std::size_t>(g.vertex_count()), false);
  for (VertexId v : frag.vertices) touched[v] = true;

  ContractionMap map;
  map.vertex_image.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  std::map<int, VertexId> root_image;
  int next = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const int r = uf.find(v);
    auto it = root_image.find(r);
    if (it != root_image.end()) {
      map.vertex_image[v] = it->second;
      continue;
    }
    root_image.emplace(r, next);
    map.vertex_image[v] = next;
    map.contracted_vertex.push_back(touched[v]);
    ++next;
  }

  std::vector<Link> links;
  map.edge_image.assign(static_cast<std::size_t>(g.edge_count()), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in_frag[e]) continue;
    map.edge_image[e] = static_cast<EdgeId>(links.size());
    map.edge_origin.push_back(e);
    links.push_back({map.vertex_image[g.edge(e).u], map.vertex_image[g.edge(e).v]});
  }
  map.quotient = Multigraph(next, std::move(links));
  return map;
}

Simplification simplify_multigraph(const Multigraph& m) {
  std::map<std::pair<int, int>, int> multiplicity;
  for (const Link& l : m.edges()) ++multiplicity[{std::min(l.u, l.v), std::max(l.u, l.v)}];

  Simplification s;
  s.vertex_origin.resize(static_cast<std::size_t>(m.vertex_count()));
  std::iota(s.vertex_origin.begin(), s.vertex_origin.end(), 0);
  std::vector<Link> links;
  int next = m.vertex_count();
  auto add = [&](VertexId a, VertexId b, EdgeId origin, int pos) {
    links.push_back({a, b});
    s.edge_origin.push_back(origin);
    s.path_position.push_back(pos);
  };
  for (EdgeId e = 0; e < m.edge_count(); ++e) {
    const Link& l = m.edge(e);
    if (l.u == l.v) {
      const VertexId a = next++, b = next++;
      s.vertex_origin.push_back(-1);
      s.vertex_origin.push_back(-1);
      add(l.u, a, e, 0);
      add(a, b, e, 1);
      add(b, l.v, e, 2);
      s.path_length.push_back(3);
    } else if (multiplicity[{std::min(l.u, l.v), std::max(l.u, l.v)}] > 1) {
      const VertexId mid = next++;
      s.vertex_origin.push_back(-1);
      add(l.u, mid, e, 0);
      add(mid, l.v, e, 1);
      s.path_length.push_back(2);
    } else {
      add(l.u, l.v, e, 0);
      s.path_length.push_back(1);
    }
  }
  s.graph = Graph(next, std::move(links));
  return s;
}

std::vector<bool> lift_witness(const Simplification& s, const std::vector<bool>& witness) {
  std::vector<bool> out(s.vertex_origin.size(), false);
  for (std::size_t v = 0; v < s.vertex_origin.size(); ++v) {
    const VertexId o = s.vertex_origin[v];
    if (o >= 0 && static_cast<std::size_t>(o) < witness.size()) out[v] = witness[o];
  }
  return out;
}

std::vector<std::vector<VertexId>> automorphisms(const Graph& g, int max_vertices) {
  const int n = g.vertex_count();
  if (n > max_vertices)
    throw CapacityError("automorphism search limited to " + std::to_string(max_vertices) + " vertices, got " +
                        std::to_string(n));
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> perm(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);

  // Assign images vertex by vertex; check adjacency against earlier vertices.
  auto extend = [&](auto&& self, int v) -> void {
    if (v == n) {
      out.push_back(perm);
      return;
    }
    for (VertexId img = 0; img < n; ++img) {
      if (used[img] || g.degree(img) != g.degree(v)) continue;
      bool ok = true;
      for (VertexId w = 0; w < v && ok; ++w) ok = g.adjacent(v, w) == g.adjacent(img, perm[w]);
      if (!ok) continue;
      used[img] = true;
      perm[v] = img;
      self(self, v + 1);
      used[img] = false;
    }
    perm[v] = -1;
  };
  extend(extend, 0);
  return out;
}

}  // namespace dtrace
