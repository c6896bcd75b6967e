// Single-face constructions. A walk here is the boundary of the only face of
// an embedding; inserting an edge into a corner keeps the transitions at every
// vertex a single cycle, so the walk stays strong.

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dtrace/construction.hpp"
#include "dtrace/errors.hpp"

namespace dtrace {

namespace {

std::size_t first_corner(std::span<const Step> w, VertexId x, std::size_t from = 0) {
  for (std::size_t i = from; i < w.size(); ++i)
    if (w[i].from == x) return i;
  return w.size();
}

void append(Walk& out, std::span<const Step> part) { out.insert(out.end(), part.begin(), part.end()); }

// Inserts e1 = xy and e2 = xz (sharing x) untwisted: e1 splits the face in
// two, e2 joins the halves again.
Walk insert_pair(const Multigraph& g, const Walk& walk, EdgeId e1, EdgeId e2, VertexId x) {
  const VertexId y = g.other(e1, x), z = g.other(e2, x);
  const Walk w = rotated(walk, first_corner(walk, x));
  const std::size_t j = first_corner(w, y, 1);
  if (j == w.size()) throw InternalError("corner insertion: endpoint missing from the face walk");

  Walk a(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
  a.push_back(Step{e1, y, x});
  Walk b(w.begin() + static_cast<std::ptrdiff_t>(j), w.end());
  b.push_back(Step{e1, x, y});

  Walk out;
  if (const std::size_t q = first_corner(b, z); q < b.size()) {
    append(out, a);
    out.push_back(Step{e2, x, z});
    append(out, rotated(b, q));
    out.push_back(Step{e2, z, x});
  } else {
    const std::size_t p = first_corner(a, z);
    if (p == a.size()) throw InternalError("corner insertion: endpoint missing from both faces");
    append(out, rotated(b, b.size() - 1));
    out.push_back(Step{e2, x, z});
    append(out, rotated(a, p));
    out.push_back(Step{e2, z, x});
  }
  return out;
}

// Twisted insertion of e = xy: the face stays single and e is traversed twice
// from y to x.
Walk insert_twisted(const Multigraph& g, const Walk& walk, EdgeId e, VertexId x) {
  const VertexId y = g.other(e, x);
  const Walk w = rotated(walk, first_corner(walk, x));
  const std::size_t j = first_corner(w, y, 1);
  if (j == w.size()) throw InternalError("twisted insertion: endpoint missing from the face walk");
  Walk out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
  out.push_back(Step{e, y, x});
  append(out, reversed(std::span<const Step>(w).subspan(j)));
  out.push_back(Step{e, y, x});
  return out;
}

struct Pair {
  EdgeId first;
  EdgeId second;
  VertexId shared;
};

// Decomposes a connected edge set of even size into pairs of edges sharing a
// vertex. DFS; vertices are finished deepest first, each pairs up the edges it
// owns and hands a leftover to its parent edge.
std::vector<Pair> pair_adjacent_edges(const Multigraph& g, const Component& comp) {
  const int n = g.vertex_count();
  std::vector<bool> in_comp(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId e : comp.edges) in_comp[e] = true;

  std::vector<int> order(static_cast<std::size_t>(n), -1);
  std::vector<EdgeId> parent_edge(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> discovered;
  const VertexId root = comp.vertices.front();
  std::vector<std::pair<VertexId, std::size_t>> stack{{root, 0}};
  order[root] = 0;
  discovered.push_back(root);
  while (!stack.empty()) {
    auto& [v, idx] = stack.back();
    auto inc = g.incident(v);
    if (idx == inc.size()) {
      stack.pop_back();
      continue;
    }
    const EdgeId e = inc[idx++];
    if (!in_comp[e]) continue;
    const VertexId w = g.other(e, v);
    if (order[w] >= 0) continue;
    order[w] = static_cast<int>(discovered.size());
    discovered.push_back(w);
    parent_edge[w] = e;
    stack.emplace_back(w, 0);
  }

  // Owner of each edge: tree edges belong to the parent end, the others to the
  // endpoint discovered first.
  std::vector<bool> paired(static_cast<std::size_t>(g.edge_count()), false);
  std::vector<Pair> pairs;
  for (auto it = discovered.rbegin(); it != discovered.rend(); ++it) {
    const VertexId v = *it;
    std::vector<EdgeId> owned;
    for (EdgeId e : g.incident(v)) {
      if (!in_comp[e] || paired[e] || e == parent_edge[v]) continue;
      const VertexId w = g.other(e, v);
      const bool tree_child = parent_edge[w] == e;
      if (tree_child || order[w] > order[v]) owned.push_back(e);
    }
    std::sort(owned.begin(), owned.end());
    owned.erase(std::unique(owned.begin(), owned.end()), owned.end());
    std::size_t i = 0;
    for (; i + 1 < owned.size(); i += 2) {
      pairs.push_back({owned[i], owned[i + 1], v});
      paired[owned[i]] = paired[owned[i + 1]] = true;
    }
    if (i < owned.size()) {
      if (parent_edge[v] < 0) throw InternalError("edge pairing left an edge over at the root");
      pairs.push_back({owned[i], parent_edge[v], v});
      paired[owned[i]] = paired[parent_edge[v]] = true;
    }
  }
  return pairs;
}

}  // namespace

Walk tree_boundary_walk(const Multigraph& g, std::span<const EdgeId> tree_edges, VertexId root) {
  std::vector<bool> in_tree(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId e : tree_edges) in_tree[e] = true;
  Walk out;
  if (g.vertex_count() == 0) return out;
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  auto visit = [&](auto&& self, VertexId v) -> void {
    seen[v] = true;
    std::vector<EdgeId> inc(g.incident(v).begin(), g.incident(v).end());
    std::sort(inc.begin(), inc.end());
    for (EdgeId e : inc) {
      if (!in_tree[e]) continue;
      const VertexId w = g.other(e, v);
      if (seen[w]) continue;
      out.push_back(Step{e, v, w});
      self(self, w);
      out.push_back(Step{e, w, v});
    }
  };
  visit(visit, root);
  return out;
}

DoubleTrace antiparallel_strong_trace(const Multigraph& g, const SpanningTreeCertificate& cert) {
  for (const Component& c : cert.co_tree.components)
    if (c.odd) throw PreconditionError("antiparallel strong trace needs every co-tree component even");
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.is_loop(e)) throw PreconditionError("antiparallel strong trace construction does not accept loops");
  Walk w = tree_boundary_walk(g, cert.tree_edges);
  for (const Component& c : cert.co_tree.components)
    for (const Pair& p : pair_adjacent_edges(g, c)) w = insert_pair(g, w, p.first, p.second, p.shared);
  return DoubleTrace{std::move(w)};
}

DoubleTrace antiparallel_double_trace_with_repetitions_in(const Multigraph& g, const std::vector<bool>& witness,
                                                          const SpanningTreeCertificate& cert) {
  if (!certificate_valid(g, witness, cert)) throw PreconditionError("certificate does not match the graph and witnesses");

  // Split one witness per odd component: its co-tree edges move to a fresh
  // vertex, and one of them joins the tree so that what remains of the
  // component breaks into even pieces only.
  std::vector<Link> links(g.edges().begin(), g.edges().end());
  std::vector<VertexId> origin(static_cast<std::size_t>(g.vertex_count()));
  std::iota(origin.begin(), origin.end(), 0);
  EdgeSet tree = cert.tree_edges;
  std::vector<bool> cotree(static_cast<std::size_t>(g.edge_count()), true);
  for (EdgeId e : tree) cotree[e] = false;

  for (const Component& c : cert.co_tree.components) {
    if (!c.odd) continue;
    VertexId v = -1;
    for (VertexId x : c.vertices)
      if (witness[x]) {
        v = x;
        break;
      }
    const VertexId split = static_cast<VertexId>(origin.size());
    origin.push_back(v);
    EdgeSet at_v;
    for (EdgeId e : c.edges) {
      if (links[e].u == v) links[e].u = split, at_v.push_back(e);
      else if (links[e].v == v) links[e].v = split, at_v.push_back(e);
    }
    bool chosen = false;
    for (EdgeId e : at_v) {
      EdgeSet rest;
      for (EdgeId f : c.edges)
        if (f != e) rest.push_back(f);
      const Multigraph trial(static_cast<int>(origin.size()), links);
      const ComponentReport pieces = components_with_parity(trial, induced_edge_subgraph(trial, rest));
      if (pieces.odd_count() == 0) {
        tree.push_back(e);
        cotree[e] = false;
        chosen = true;
        break;
      }
    }
    if (!chosen) throw InternalError("no edge at the split witness leaves only even pieces");
  }

  const Multigraph split_graph(static_cast<int>(origin.size()), links);
  EdgeSet rest;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (cotree[e]) rest.push_back(e);
  SpanningTreeCertificate even_cert;
  std::sort(tree.begin(), tree.end());
  even_cert.tree_edges = tree;
  even_cert.co_tree = components_with_parity(split_graph, induced_edge_subgraph(split_graph, rest));
  even_cert.deficiency = even_cert.co_tree.odd_count();
  if (even_cert.deficiency != 0 || !split_graph.is_connected())
    throw InternalError("vertex splitting did not produce an all-even co-tree");

  DoubleTrace t = antiparallel_strong_trace(split_graph, even_cert);
  for (Step& s : t.steps) {
    s.from = origin[s.from];
    s.to = origin[s.to];
  }
  return t;
}

DoubleTrace strong_trace(const Graph& g) {
  if (!g.is_connected()) throw PreconditionError("strong trace needs a connected graph");
  EdgeSet tree;
  {
    std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const int a = find(g.edge(e).u), b = find(g.edge(e).v);
      if (a != b) {
        parent[a] = b;
        tree.push_back(e);
      }
    }
  }
  std::vector<bool> in_tree(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId e : tree) in_tree[e] = true;
  Walk w = tree_boundary_walk(g, tree);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!in_tree[e]) w = insert_twisted(g, w, e, g.edge(e).u);
  return DoubleTrace{std::move(w)};
}

}  // namespace dtrace
