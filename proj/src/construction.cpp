#include "dtrace/construction.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>

#include "dtrace/enumeration.hpp"
#include "dtrace/errors.hpp"

namespace dtrace {

namespace {

int end_key(const Multigraph& g, const Step& s, bool entering) {
  const bool fwd = is_forward(g, s);
  return 2 * s.edge + ((fwd == entering) ? 1 : 0);
}

std::size_t first_visit(std::span<const Step> w, VertexId v) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i].from == v) return i;
  return w.size();
}

Walk doubled(const Walk& tour) {
  Walk out = tour;
  out.insert(out.end(), tour.begin(), tour.end());
  return out;
}

// Hierholzer over the fragment; usable_from(e, v) says whether e may be
// left from v.
template <class Next>
Walk hierholzer(const Multigraph& g, const Fragment& f, Next&& usable_from) {
  Walk out;
  if (f.edges.empty()) return out;
  std::vector<bool> in_frag(static_cast<std::size_t>(g.edge_count()), false), used = in_frag;
  for (EdgeId e : f.edges) in_frag[e] = true;
  const VertexId start = *std::min_element(f.vertices.begin(), f.vertices.end());
  std::vector<std::size_t> ptr(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<std::pair<VertexId, EdgeId>> stack{{start, -1}}, circuit;
  while (!stack.empty()) {
    const VertexId v = stack.back().first;
    auto inc = g.incident(v);
    std::size_t& p = ptr[v];
    while (p < inc.size() && (!in_frag[inc[p]] || used[inc[p]] || !usable_from(inc[p], v))) ++p;
    if (p == inc.size()) {
      circuit.push_back(stack.back());
      stack.pop_back();
      continue;
    }
    const EdgeId e = inc[p];
    used[e] = true;
    stack.emplace_back(g.other(e, v), e);
  }
  std::reverse(circuit.begin(), circuit.end());
  for (std::size_t i = 1; i < circuit.size(); ++i)
    out.push_back(Step{circuit[i].second, circuit[i - 1].first, circuit[i].first});
  if (out.size() != f.edges.size() || !is_closed_walk(g, out))
    throw PreconditionError("fragment has no Euler tour (disconnected or unbalanced)");
  return out;
}

// Orientation of a connected parallel-and-arc component making it balanced.
std::vector<bool> component_orientation(const Multigraph& host, const std::vector<bool>& arcs, const Component& c) {
  std::vector<VertexId> local(static_cast<std::size_t>(host.vertex_count()), -1);
  for (std::size_t i = 0; i < c.vertices.size(); ++i) local[c.vertices[i]] = static_cast<VertexId>(i);
  std::vector<MixedLink> links;
  for (EdgeId e : c.edges) links.push_back({local[host.edge(e).u], local[host.edge(e).v], static_cast<bool>(arcs[e])});
  auto orient = balanced_orientation(MixedGraph(static_cast<int>(c.vertices.size()), std::move(links)));
  if (!orient) throw InternalError("parallel component has no direction-respecting Euler tour");
  std::vector<bool> forward(static_cast<std::size_t>(host.edge_count()), true);
  for (std::size_t i = 0; i < c.edges.size(); ++i) forward[c.edges[i]] = (*orient)[i];
  return forward;
}

void check_output(const Multigraph& host, const Walk& w, const std::vector<bool>& anti, const EdgeSet& arcs,
                  bool strong, const char* what) {
  std::string problem;
  const ValidationReport rep = validate_double_trace(host, w);
  if (!rep.ok) problem = rep.problems.empty() ? "invalid double trace" : rep.problems.front();
  else if (!check_restriction(host, w, RestrictionSet::from_mask(anti))) problem = "restriction violated";
  else if (!respects_arcs(host, w, arcs)) problem = "arc direction violated";
  else if (strong && !is_strong(host, w)) problem = "not strong";
  if (!problem.empty()) throw InternalError(std::string(what) + ": " + problem);
}

// Applies surgery at every repetition vertex where it is applicable; with
// `require_all` a vertex where it is not applicable is an error.
std::size_t reduce_all(const Multigraph& host, Walk& w, bool require_all) {
  std::size_t count = 0;
  std::vector<bool> stuck(static_cast<std::size_t>(host.vertex_count()), false);
  for (;;) {
    const TransitionSystem ts(host, w);
    VertexId target = -1;
    for (VertexId v = 0; v < host.vertex_count() && target < 0; ++v)
      if (ts.at(v).size() >= 2 && !stuck[v]) target = v;
    if (target < 0) return count;
    try {
      w = reduce_repetition(host, w, target).steps;
      ++count;
    } catch (const PreconditionError& e) {
      if (require_all)
        throw InternalError("repetition at vertex " + std::to_string(target) + " cannot be reduced: " + e.what());
      stuck[target] = true;
    }
  }
}

DoubleTrace oracle_fallback(TraceQuery q, const char* what) {
  q.mode = SearchMode::Exists;
  const OracleResult r = oracle_search(q);
  if (!r.exists) throw InternalError(std::string(what) + ": positive verdict but the exhaustive search found no trace");
  return DoubleTrace{r.traces.front()};
}

std::vector<bool> to_mask(const EdgeSet& s, int m) {
  std::vector<bool> out(static_cast<std::size_t>(m), false);
  for (EdgeId e : s) out[e] = true;
  return out;
}

}  // namespace

std::size_t WalkFamily::closed_count() const { return static_cast<std::size_t>(std::count(closed.begin(), closed.end(), true)); }

Walk euler_tour(const Multigraph& g, const Fragment& fragment) {
  return hierholzer(g, fragment, [](EdgeId, VertexId) { return true; });
}

Walk directed_euler_tour(const Multigraph& g, const Fragment& fragment, const std::vector<bool>& forward) {
  return hierholzer(g, fragment, [&](EdgeId e, VertexId v) {
    const Link& l = g.edge(e);
    return (forward[e] ? l.u : l.v) == v;
  });
}

DoubleTrace parallel_strong_trace(const Graph& g) {
  if (!g.is_connected()) throw PreconditionError("parallel strong trace needs a connected graph");
  if (!is_even_subgraph(g, whole_graph(g))) throw PreconditionError("parallel strong trace needs every degree even");
  Walk w = doubled(euler_tour(g, whole_graph(g)));
  reduce_all(g, w, true);
  return DoubleTrace{std::move(w)};
}

Walk merge_closed_walks(std::span<const Step> w1, std::span<const Step> w2, VertexId v) {
  if (w2.empty()) return Walk(w1.begin(), w1.end());
  const std::size_t j = first_visit(w2, v);
  if (j == w2.size()) throw PreconditionError("second walk does not pass through vertex " + std::to_string(v));
  if (w1.empty()) return rotated(w2, j);
  const std::size_t i = first_visit(w1, v);
  if (i == w1.size()) throw PreconditionError("first walk does not pass through vertex " + std::to_string(v));
  Walk out(w1.begin(), w1.begin() + static_cast<std::ptrdiff_t>(i));
  const Walk inner = rotated(w2, j);
  out.insert(out.end(), inner.begin(), inner.end());
  out.insert(out.end(), w1.begin() + static_cast<std::ptrdiff_t>(i), w1.end());
  return out;
}

DoubleTrace reduce_repetition(const Multigraph& g, std::span<const Step> w, VertexId v) {
  const TransitionSystem ts(g, w);
  const auto comps = ts.at(v);
  if (comps.size() < 2) throw PreconditionError("vertex " + std::to_string(v) + " has a single transition component");
  std::map<int, std::size_t> comp_of;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (const EdgeEnd& end : comps[c].ends) comp_of[2 * end.edge + end.side] = c;

  // Lowest non-loop edge at v traversed twice into v or twice out of v.
  std::vector<int> into(static_cast<std::size_t>(g.edge_count()), 0), outof = into;
  for (const Step& s : w) {
    if (s.from == s.to) continue;
    if (s.to == v) ++into[s.edge];
    if (s.from == v) ++outof[s.edge];
  }
  EdgeId e = -1;
  for (EdgeId f = 0; f < g.edge_count() && e < 0; ++f)
    if (!g.is_loop(f) && (into[f] == 2 || outof[f] == 2)) e = f;
  if (e < 0) throw PreconditionError("no edge at vertex " + std::to_string(v) + " is traversed twice in one direction");

  const bool flip = into[e] != 2;
  Walk work = flip ? reversed(w) : Walk(w.begin(), w.end());
  const std::size_t len = work.size();
  const std::size_t r1 = comp_of.at(2 * e + (g.edge(e).u == v ? 0 : 1));
  std::size_t r2 = comps.size();
  for (std::size_t c = 0; c < comps.size() && r2 == comps.size(); ++c)
    if (c != r1) r2 = c;

  std::vector<std::size_t> e_in, r2_in;
  for (std::size_t i = 0; i < len; ++i) {
    if (work[i].to != v) continue;
    if (work[i].edge == e) e_in.push_back(i);
    else if (comp_of.at(end_key(g, work[i], true)) == r2) r2_in.push_back(i);
  }
  if (e_in.size() != 2 || r2_in.empty()) throw InternalError("repetition surgery: inconsistent visit structure");

  // Cyclic order a (e), b (e), k (R2).
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::size_t a = e_in[0], b = e_in[1], k = none;
  for (std::size_t i : r2_in)
    if (i > b) {
      k = i;
      break;
    }
  if (k == none && r2_in.front() < a) k = r2_in.front() + len;
  if (k == none) {
    k = r2_in.front() + len;
    a = e_in[1];
    b = e_in[0] + len;
  }
  const Walk r = rotated(work, a);
  const std::size_t bb = b - a, kk = k - a;
  Walk out;
  out.reserve(len);
  out.push_back(r[0]);
  out.insert(out.end(), r.begin() + static_cast<std::ptrdiff_t>(bb + 1), r.begin() + static_cast<std::ptrdiff_t>(kk + 1));
  out.insert(out.end(), r.begin() + 1, r.begin() + static_cast<std::ptrdiff_t>(bb));
  out.push_back(r[bb]);
  out.insert(out.end(), r.begin() + static_cast<std::ptrdiff_t>(kk + 1), r.end());
  if (flip) out = reversed(out);
  return DoubleTrace{std::move(out)};
}

DoubleTrace restricted_pipeline(const Multigraph& host, const std::vector<bool>& antiparallel,
                                const std::vector<bool>& arcs, const QuotientCertificate& cert,
                                PipelineStages* stages, bool require_strong) {
  PipelineStages local;
  PipelineStages& st = stages ? *stages : local;
  const ContractionMap& cm = cert.contraction;
  const Simplification& simp = cert.simplified;

  // (1) antiparallel trace of G' with repetitions only at witnesses.
  Walk wq = antiparallel_double_trace_with_repetitions_in(simp.graph, cert.witness, cert.tree).steps;
  if (!wq.empty()) {
    std::size_t s = 0;
    while (s < wq.size() && simp.vertex_origin[wq[s].from] < 0) ++s;
    wq = rotated(wq, s);
  }
  st.quotient_trace = wq;

  // (2) collapse subdivision paths, lift to host edges.
  Walk lifted;
  for (std::size_t i = 0; i < wq.size();) {
    const Step& s = wq[i];
    const EdgeId q = simp.edge_origin[s.edge];
    const int len = simp.path_length[q];
    if (simp.vertex_origin[s.from] < 0) throw InternalError("quotient trace turns inside a subdivision path");
    bool fwd;
    if (len == 1) {
      fwd = cm.quotient.edge(q).u == simp.vertex_origin[s.from];
    } else {
      fwd = simp.path_position[s.edge] == 0;
      for (int t = 1; t < len; ++t)
        if (i + t >= wq.size() || simp.edge_origin[wq[i + t].edge] != q)
          throw InternalError("quotient trace leaves a subdivision path midway");
    }
    const EdgeId ge = cm.edge_origin[q];
    const Link& l = host.edge(ge);
    lifted.push_back(fwd ? Step{ge, l.u, l.v} : Step{ge, l.v, l.u});
    i += static_cast<std::size_t>(len);
  }
  st.lifted = lifted;

  // (3) cut at contracted vertices, starting after the lowest one.
  auto cut_after = [&](std::size_t i) { return static_cast<bool>(cm.contracted_vertex[cm.vertex_image[lifted[i].to]]); };
  WalkFamily& fam = st.family;
  fam = {};
  if (!lifted.empty()) {
    const std::size_t len = lifted.size();
    std::size_t start = len;
    for (std::size_t i = 0; i < len; ++i) {
      if (!cut_after(i)) continue;
      const Step& next = lifted[(i + 1) % len];
      if (start == len || std::pair(next.from, next.edge) < std::pair(lifted[start].from, lifted[start].edge))
        start = (i + 1) % len;
    }
    if (start == len) {
      fam.walks.push_back(lifted);
      fam.closed.push_back(true);
    } else {
      const Walk r = rotated(lifted, start);
      Walk cur;
      for (std::size_t i = 0; i < len; ++i) {
        cur.push_back(r[i]);
        if (cut_after((i + start) % len)) {
          fam.closed.push_back(cur.front().from == cur.back().to);
          fam.walks.push_back(std::move(cur));
          cur.clear();
        }
      }
      if (!cur.empty()) throw InternalError("walk family: trailing uncut segment");
    }
  }

  // (4) doubled Euler tours of the parallel components.
  const Fragment pfrag = induced_edge_subgraph(host, cert.parallel_edges);
  const ComponentReport pcomps = components_with_parity(host, pfrag);
  std::vector<bool> component_vertex(static_cast<std::size_t>(host.vertex_count()), false);
  st.parallel_traces.clear();
  for (const Component& c : pcomps.components) {
    for (VertexId v : c.vertices) component_vertex[v] = true;
    const Fragment f{c.vertices, c.edges};
    const bool has_arc = std::any_of(c.edges.begin(), c.edges.end(), [&](EdgeId e) { return static_cast<bool>(arcs[e]); });
    const Walk tour = has_arc ? directed_euler_tour(host, f, component_orientation(host, arcs, c)) : euler_tour(host, f);
    st.parallel_traces.push_back(doubled(tour));
  }

  std::vector<Walk> closed_walks = st.parallel_traces;
  std::vector<const Walk*> open;
  for (std::size_t i = 0; i < fam.walks.size(); ++i) {
    if (fam.closed[i]) closed_walks.push_back(fam.walks[i]);
    else open.push_back(&fam.walks[i]);
  }

  // (5) chain open walks end to start.
  std::vector<bool> used(open.size(), false);
  for (std::size_t i = 0; i < open.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    Walk chain = *open[i];
    while (chain.back().to != chain.front().from) {
      std::size_t j = 0;
      while (j < open.size() && (used[j] || open[j]->front().from != chain.back().to)) ++j;
      if (j == open.size()) throw InternalError("open walks do not balance at vertex " + std::to_string(chain.back().to));
      used[j] = true;
      chain.insert(chain.end(), open[j]->begin(), open[j]->end());
    }
    closed_walks.push_back(std::move(chain));
  }

  // (6) merge at parallel-component vertices.
  st.merges = 0;
  while (closed_walks.size() > 1) {
    bool merged = false;
    for (std::size_t j = 1; j < closed_walks.size() && !merged; ++j) {
      std::vector<bool> in_first(static_cast<std::size_t>(host.vertex_count()), false);
      for (const Step& s : closed_walks[0]) in_first[s.from] = true;
      VertexId at = -1;
      for (const Step& s : closed_walks[j])
        if (component_vertex[s.from] && in_first[s.from] && (at < 0 || s.from < at)) at = s.from;
      if (at < 0) continue;
      closed_walks[0] = merge_closed_walks(closed_walks[0], closed_walks[j], at);
      closed_walks.erase(closed_walks.begin() + static_cast<std::ptrdiff_t>(j));
      merged = true;
      ++st.merges;
    }
    if (!merged) throw InternalError("closed walks share no parallel-component vertex");
  }
  Walk w = closed_walks.empty() ? Walk{} : std::move(closed_walks.front());

  // (7) repetition surgery.
  st.surgeries = reduce_all(host, w, require_strong);

  EdgeSet arc_list;
  for (EdgeId e = 0; e < host.edge_count(); ++e)
    if (arcs[e]) arc_list.push_back(e);
  check_output(host, w, antiparallel, arc_list, require_strong, "restricted trace pipeline");
  return DoubleTrace{std::move(w)};
}

DoubleTrace build_E_restricted_double_trace(const Graph& g, const RestrictionSet& r) {
  const FeasibilityAnswer a = has_E_restricted_double_trace(g, r);
  if (!a.verdict) throw PreconditionError("no E-restricted double trace: " + a.violated.front());
  const std::vector<bool> anti = r.mask(g.edge_count());
  std::vector<Walk> walks;
  EdgeSet parallel;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (anti[e]) walks.push_back({Step{e, g.edge(e).u, g.edge(e).v}, Step{e, g.edge(e).v, g.edge(e).u}});
    else parallel.push_back(e);
  }
  for (const Component& c : components_with_parity(g, induced_edge_subgraph(g, parallel)).components)
    walks.push_back(doubled(euler_tour(g, Fragment{c.vertices, c.edges})));
  Walk w;
  if (!walks.empty()) {
    w = walks.front();
    walks.erase(walks.begin());
  }
  while (!walks.empty()) {
    bool merged = false;
    for (std::size_t j = 0; j < walks.size() && !merged; ++j) {
      for (const Step& s : walks[j]) {
        if (first_visit(w, s.from) == w.size()) continue;
        w = merge_closed_walks(w, walks[j], s.from);
        walks.erase(walks.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
        break;
      }
    }
    if (!merged) throw InternalError("E-restricted double trace: walks do not connect");
  }
  check_output(g, w, anti, {}, false, "E-restricted double trace");
  return DoubleTrace{std::move(w)};
}

DoubleTrace build_E_restricted_strong_trace(const Graph& g, const RestrictionSet& r, PipelineStages* stages) {
  const FeasibilityAnswer a = has_E_restricted_strong_trace(g, r);
  if (!a.verdict) throw PreconditionError("no E-restricted strong trace: " + a.violated.front());
  return restricted_pipeline(g, r.mask(g.edge_count()), std::vector<bool>(static_cast<std::size_t>(g.edge_count()), false),
                             *a.quotient, stages);
}

DoubleTrace build_E_restricted_d_stable_trace(const Graph& g, const RestrictionSet& r, int d) {
  if (d < 1) throw InputError("d must be at least 1");
  const FeasibilityAnswer a = has_E_restricted_d_stable_trace(g, r, d);
  if (!a.verdict) throw PreconditionError("no E-restricted d-stable trace: " + a.violated.front());
  const std::vector<bool> anti = r.mask(g.edge_count());
  const std::vector<bool> none(static_cast<std::size_t>(g.edge_count()), false);
  DoubleTrace t = restricted_pipeline(g, anti, none, *a.quotient, nullptr, a.quotient->contracted_witnesses_only);
  if (is_d_stable(g, t.steps, d)) return t;
  return oracle_fallback(TraceQuery::restricted(g, r, Stability::DStable, d), "E-restricted d-stable trace");
}

DoubleTrace build_d_stable_trace(const Graph& g, int d) {
  if (d < 1) throw InputError("d must be at least 1");
  const FeasibilityAnswer a = has_d_stable_trace(g, d);
  if (!a.verdict) throw PreconditionError("no d-stable trace: " + a.violated.front());
  DoubleTrace t = strong_trace(g);
  if (!is_d_stable(g, t.steps, d)) throw InternalError("strong trace with min degree > d is not d-stable");
  return t;
}

DoubleTrace build_antiparallel_strong_trace(const Graph& g) {
  const FeasibilityAnswer a = has_antiparallel_strong_trace(g);
  if (!a.verdict) throw PreconditionError("no antiparallel strong trace: " + a.violated.front());
  DoubleTrace t = antiparallel_strong_trace(g, *a.tree);
  check_output(g, t.steps, std::vector<bool>(static_cast<std::size_t>(g.edge_count()), true), {}, true,
               "antiparallel strong trace");
  return t;
}

DoubleTrace build_antiparallel_d_stable_trace(const Graph& g, int d) {
  if (d < 1) throw InputError("d must be at least 1");
  const FeasibilityAnswer a = has_antiparallel_d_stable_trace(g, d);
  if (!a.verdict) throw PreconditionError("no antiparallel d-stable trace: " + a.violated.front());
  if (has_antiparallel_strong_trace(g).verdict) return build_antiparallel_strong_trace(g);
  DoubleTrace t = antiparallel_double_trace_with_repetitions_in(g, *a.tree_witness, *a.tree);
  if (is_d_stable(g, t.steps, d)) return t;
  return oracle_fallback(TraceQuery::uniform(g, EdgeRule::Antiparallel, Stability::DStable, d),
                         "antiparallel d-stable trace");
}

DoubleTrace build_parallel_d_stable_trace(const Graph& g, int d) {
  if (d < 1) throw InputError("d must be at least 1");
  const FeasibilityAnswer a = has_parallel_d_stable_trace(g, d);
  if (!a.verdict) throw PreconditionError("no parallel d-stable trace: " + a.violated.front());
  return parallel_strong_trace(g);
}

DoubleTrace build_mixed_trace(const MixedGraph& b, const RestrictionSet& r, std::optional<int> d) {
  if (d && *d < 1) throw InputError("d must be at least 1");
  const FeasibilityAnswer a = d ? has_E_restricted_d_stable_trace_mixed(b, r, *d) : has_E_restricted_strong_trace_mixed(b, r);
  if (!a.verdict) throw PreconditionError("no direction-respecting restricted trace: " + a.violated.front());
  const Multigraph& host = b.underlying();
  const std::vector<bool> anti = r.mask(b.link_count());
  const std::vector<bool> arcs = to_mask(b.arcs(), b.link_count());
  const bool strict = !d || a.quotient->contracted_witnesses_only;
  DoubleTrace t = restricted_pipeline(host, anti, arcs, *a.quotient, nullptr, strict);
  if (!d || is_d_stable(host, t.steps, *d)) return t;
  return oracle_fallback(TraceQuery::mixed(b, r, Stability::DStable, *d), "mixed d-stable trace");
}

}  // namespace dtrace
