#include "dtrace/enumeration.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dtrace/errors.hpp"

namespace dtrace {

namespace {

using PairSeq = std::vector<std::pair<VertexId, VertexId>>;

std::vector<EdgeRule> restriction_rules(int m, const RestrictionSet& r) {
  std::vector<EdgeRule> rules(static_cast<std::size_t>(m), EdgeRule::Parallel);
  for (EdgeId e : r.antiparallel) {
    if (e < 0 || e >= m) throw InputError("restriction names edge " + std::to_string(e) + " outside the graph");
    rules[e] = EdgeRule::Antiparallel;
  }
  return rules;
}

PairSeq image(std::span<const Step> w, const std::vector<VertexId>& perm, bool rev, std::size_t shift) {
  const std::size_t len = w.size();
  PairSeq out(len);
  for (std::size_t i = 0; i < len; ++i) {
    const Step& s = rev ? w[len - 1 - ((i + shift) % len)] : w[(i + shift) % len];
    out[i] = rev ? std::pair(perm[s.to], perm[s.from]) : std::pair(perm[s.from], perm[s.to]);
  }
  return out;
}

Walk to_walk(const Graph& g, const PairSeq& seq) {
  Walk w;
  w.reserve(seq.size());
  for (auto [a, b] : seq) w.push_back(Step{*g.edge_between(a, b), a, b});
  return w;
}

struct Best {
  PairSeq seq;
  std::size_t shift = 0;
  bool rev = false;
  std::size_t aut = 0;
};

Best minimum(const Graph& g, std::span<const Step> w, std::span<const std::vector<VertexId>> auts) {
  require_double_trace(g, w);
  std::vector<VertexId> id(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) id[v] = v;
  const std::span<const std::vector<VertexId>> group = auts.empty() ? std::span<const std::vector<VertexId>>(&id, 1) : auts;
  Best best;
  bool have = false;
  for (std::size_t a = 0; a < group.size(); ++a)
    for (int rev = 0; rev < 2; ++rev)
      for (std::size_t k = 0; k < std::max<std::size_t>(w.size(), 1); ++k) {
        PairSeq s = image(w, group[a], rev == 1, k);
        if (!have || s < best.seq) {
          best = {std::move(s), k, rev == 1, a};
          have = true;
        }
      }
  return best;
}

}  // namespace

TraceQuery TraceQuery::restricted(const Multigraph& host, const RestrictionSet& r, Stability s, int d) {
  TraceQuery q;
  q.host = host;
  q.rules = restriction_rules(host.edge_count(), r);
  q.stability = s;
  q.d = d;
  return q;
}

TraceQuery TraceQuery::mixed(const MixedGraph& b, const RestrictionSet& r, Stability s, int d) {
  TraceQuery q = restricted(b.underlying(), r, s, d);
  for (EdgeId e : b.arcs()) {
    if (q.rules[e] == EdgeRule::Antiparallel) throw InputError("restriction names arc " + std::to_string(e));
    q.rules[e] = EdgeRule::Forward;
  }
  return q;
}

TraceQuery TraceQuery::uniform(const Multigraph& host, EdgeRule rule, Stability s, int d) {
  TraceQuery q;
  q.host = host;
  q.rules.assign(static_cast<std::size_t>(host.edge_count()), rule);
  q.stability = s;
  q.d = d;
  return q;
}

Walk canonical_form(const Graph& g, std::span<const Step> w, std::span<const std::vector<VertexId>> auts) {
  return to_walk(g, minimum(g, w, auts).seq);
}

std::vector<Walk> orbit(const Graph& g, std::span<const Step> w, std::span<const std::vector<VertexId>> auts) {
  require_double_trace(g, w);
  std::vector<VertexId> id(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) id[v] = v;
  const std::span<const std::vector<VertexId>> group = auts.empty() ? std::span<const std::vector<VertexId>>(&id, 1) : auts;
  std::set<PairSeq> seen;
  for (const auto& perm : group)
    for (int rev = 0; rev < 2; ++rev)
      for (std::size_t k = 0; k < std::max<std::size_t>(w.size(), 1); ++k) seen.insert(image(w, perm, rev == 1, k));
  std::vector<Walk> out;
  for (const PairSeq& s : seen) out.push_back(to_walk(g, s));
  return out;
}

std::vector<std::vector<VertexId>> stabilizer(const Graph& g, std::span<const EdgeId> e) {
  std::vector<bool> in(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId x : e) in[x] = true;
  std::vector<std::vector<VertexId>> out;
  for (auto& perm : automorphisms(g)) {
    bool keeps = true;
    for (EdgeId x = 0; x < g.edge_count() && keeps; ++x) {
      const EdgeId y = *g.edge_between(perm[g.edge(x).u], perm[g.edge(x).v]);
      keeps = in[x] == in[y];
    }
    if (keeps) out.push_back(std::move(perm));
  }
  return out;
}

std::vector<EquivalenceClass> enumerate_classes(const Graph& g, const TraceQuery& q,
                                                std::span<const std::vector<VertexId>> auts,
                                                const OracleLimits& limits, int threads) {
  if (!(q.host == static_cast<const Multigraph&>(g))) throw InputError("query host differs from the graph");
  if (std::find(q.rules.begin(), q.rules.end(), EdgeRule::Forward) != q.rules.end())
    throw InputError("class enumeration does not support arcs");
  TraceQuery all = q;
  all.mode = SearchMode::EnumerateAll;
  all.fix_start = true;
  const OracleResult r = threads == 1 ? oracle_search(all, limits) : oracle_search_parallel(all, limits, threads);
  std::map<PairSeq, EquivalenceClass> classes;
  for (const Walk& w : r.traces) {
    Best b = minimum(g, w, auts);
    if (classes.contains(b.seq)) continue;
    EquivalenceClass c;
    c.representative = to_walk(g, b.seq);
    c.size = orbit(g, w, auts).size();
    c.shift = b.shift;
    c.reversed = b.rev;
    c.automorphism = b.aut;
    classes.emplace(std::move(b.seq), std::move(c));
  }
  std::vector<EquivalenceClass> out;
  for (auto& [k, c] : classes) out.push_back(std::move(c));
  return out;
}

std::vector<RestrictedClasses> enumerate_restricted_classes(const Graph& g, int p, int d, const OracleLimits& limits,
                                                            int threads) {
  const int m = g.edge_count();
  if (p < 0 || p > m) throw InputError("p must lie between 0 and the edge count");
  if (m > limits.max_edges_enumerate)
    throw CapacityError("enumeration capacity exceeded: " + std::to_string(m) + " edges, limit " +
                        std::to_string(limits.max_edges_enumerate));
  std::vector<RestrictedClasses> out;
  std::vector<bool> pick(static_cast<std::size_t>(m), false);
  std::fill(pick.begin(), pick.begin() + p, true);
  do {
    RestrictedClasses rc;
    for (EdgeId e = 0; e < m; ++e)
      if (pick[e]) rc.antiparallel.push_back(e);
    const TraceQuery q = TraceQuery::restricted(g, RestrictionSet{rc.antiparallel},
                                                d > 0 ? Stability::DStable : Stability::Strong, d);
    const auto stab = stabilizer(g, rc.antiparallel);
    rc.classes = enumerate_classes(g, q, stab, limits, threads);
    out.push_back(std::move(rc));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace dtrace
