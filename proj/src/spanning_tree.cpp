#include <algorithm>
#include <numeric>
#include <sstream>

#include "dtrace/errors.hpp"
#include "dtrace/feasibility.hpp"

namespace dtrace {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

bool admissible(const ComponentReport& report) {
  return std::all_of(report.components.begin(), report.components.end(),
                     [](const Component& c) { return !c.odd || c.has_witness; });
}

SpanningTreeCertificate make_certificate(const Multigraph& h, const std::vector<bool>& witness, EdgeSet tree) {
  std::sort(tree.begin(), tree.end());
  std::vector<bool> in_tree(static_cast<std::size_t>(h.edge_count()), false);
  for (EdgeId e : tree) in_tree[e] = true;
  EdgeSet rest;
  for (EdgeId e = 0; e < h.edge_count(); ++e)
    if (!in_tree[e]) rest.push_back(e);
  SpanningTreeCertificate cert;
  cert.tree_edges = std::move(tree);
  cert.co_tree = components_with_parity(h, induced_edge_subgraph(h, rest), witness);
  cert.deficiency = cert.co_tree.odd_count();
  return cert;
}

// Include/exclude enumeration of spanning trees in edge-index order. Loops
// are never tree edges. Excluding an edge is allowed only while the included
// plus undecided edges still connect the host.
class TreeSearch {
 public:
  TreeSearch(const Multigraph& h, const std::vector<bool>& witness, long long budget)
      : h_(h), witness_(witness), budget_(budget), state_(static_cast<std::size_t>(h.edge_count()), Undecided) {}

  std::optional<SpanningTreeCertificate> run() {
    std::vector<int> parent(static_cast<std::size_t>(h_.vertex_count()));
    std::iota(parent.begin(), parent.end(), 0);
    if (recurse(0, parent, 0)) return found_;
    return std::nullopt;
  }

  bool exhausted() const { return exhausted_; }

 private:
  enum State : unsigned char { Undecided, Tree, CoTree };

  bool spans_without(EdgeId skip) const {
    std::vector<int> parent(static_cast<std::size_t>(h_.vertex_count()));
    std::iota(parent.begin(), parent.end(), 0);
    int merges = 0;
    for (EdgeId e = 0; e < h_.edge_count(); ++e) {
      if (e == skip || state_[e] == CoTree) continue;
      const int a = find_root(parent, h_.edge(e).u), b = find_root(parent, h_.edge(e).v);
      if (a != b) {
        parent[a] = b;
        ++merges;
      }
    }
    return merges == h_.vertex_count() - 1;
  }

  bool leaf() {
    EdgeSet tree;
    for (EdgeId e = 0; e < h_.edge_count(); ++e)
      if (state_[e] == Tree) tree.push_back(e);
    SpanningTreeCertificate cert = make_certificate(h_, witness_, std::move(tree));
    if (!admissible(cert.co_tree)) return false;
    found_ = std::move(cert);
    return true;
  }

  bool recurse(EdgeId e, std::vector<int>& parent, int tree_size) {
    if (budget_ >= 0 && ++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (tree_size == h_.vertex_count() - 1 || h_.vertex_count() <= 1) {
      for (EdgeId f = e; f < h_.edge_count(); ++f) state_[f] = CoTree;
      const bool ok = leaf();
      for (EdgeId f = e; f < h_.edge_count(); ++f) state_[f] = Undecided;
      return ok;
    }
    if (e == h_.edge_count()) return false;

    const Link& l = h_.edge(e);
    const int a = find_root(parent, l.u), b = find_root(parent, l.v);
    if (a != b) {
      std::vector<int> next = parent;
      next[find_root(next, a)] = find_root(next, b);
      state_[e] = Tree;
      if (recurse(e + 1, next, tree_size + 1)) return true;
      state_[e] = Undecided;
      if (exhausted_) return false;
    }
    if (a == b || spans_without(e)) {
      state_[e] = CoTree;
      if (recurse(e + 1, parent, tree_size)) return true;
      state_[e] = Undecided;
    }
    return false;
  }

  const Multigraph& h_;
  std::vector<bool> witness_;
  long long budget_;
  long long nodes_ = 0;
  bool exhausted_ = false;
  std::vector<State> state_;
  SpanningTreeCertificate found_;
};

}  // namespace

std::optional<SpanningTreeCertificate> find_admissible_tree(const Multigraph& h, const std::vector<bool>& witness,
                                                            const TreeSearchLimits& limits) {
  if (!h.is_connected()) throw PreconditionError("admissible tree search needs a connected host");
  if (!witness.empty() && static_cast<int>(witness.size()) != h.vertex_count())
    throw InputError("witness flags do not match the host vertex count");
  const int rank = h.edge_count() - h.vertex_count() + 1;
  const bool exact = h.vertex_count() <= limits.max_vertices && rank <= limits.max_cotree_rank;
  TreeSearch search(h, witness, exact ? -1 : limits.node_budget);
  auto result = search.run();
  if (!result && search.exhausted()) {
    std::ostringstream os;
    os << "admissible tree search inconclusive: " << h.vertex_count() << " vertices, co-tree rank " << rank
       << " exceed the exact range (" << limits.max_vertices << ", " << limits.max_cotree_rank
       << ") and the node budget " << limits.node_budget << " ran out";
    throw CapacityError(os.str());
  }
  return result;
}

bool certificate_valid(const Multigraph& h, const std::vector<bool>& witness, const SpanningTreeCertificate& cert) {
  const int n = h.vertex_count();
  if (static_cast<int>(cert.tree_edges.size()) != std::max(n - 1, 0)) return false;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> in_tree(static_cast<std::size_t>(h.edge_count()), false);
  for (EdgeId e : cert.tree_edges) {
    if (!h.valid_edge(e) || in_tree[e]) return false;
    in_tree[e] = true;
    const int a = find_root(parent, h.edge(e).u), b = find_root(parent, h.edge(e).v);
    if (a == b) return false;
    parent[a] = b;
  }
  // Co-tree report must cover exactly the non-tree edges.
  EdgeSet covered;
  for (const Component& c : cert.co_tree.components) {
    covered.insert(covered.end(), c.edges.begin(), c.edges.end());
    if (c.odd != (c.edges.size() % 2 == 1)) return false;
    bool has = false;
    for (VertexId v : c.vertices) has = has || (!witness.empty() && witness[v]);
    if (has != c.has_witness) return false;
    if (c.odd && !c.has_witness) return false;
  }
  std::sort(covered.begin(), covered.end());
  EdgeSet expected;
  for (EdgeId e = 0; e < h.edge_count(); ++e)
    if (!in_tree[e]) expected.push_back(e);
  if (covered != expected) return false;
  // Recompute components independently and compare partitions.
  const ComponentReport fresh = components_with_parity(h, induced_edge_subgraph(h, expected), witness);
  if (fresh.components.size() != cert.co_tree.components.size()) return false;
  return cert.deficiency == cert.co_tree.odd_count();
}

}  // namespace dtrace
