#include "oracle_engine.hpp"

#include <algorithm>
#include <string>

#include "dtrace/errors.hpp"

namespace dtrace::detail {

bool prepare(const TraceQuery& q, const OracleLimits& limits, OracleResult& out) {
  const Multigraph& g = q.host;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.is_loop(e)) throw InputError("oracle does not accept loops");
  if (!q.rules.empty() && static_cast<int>(q.rules.size()) != g.edge_count())
    throw InputError("edge rule list does not match the edge count");
  if (q.stability == Stability::DStable && q.d < 1) throw InputError("d must be at least 1 for a d-stable query");
  const int cap = q.mode == SearchMode::Exists ? limits.max_edges_exists : limits.max_edges_enumerate;
  if (g.edge_count() > cap)
    throw CapacityError("oracle capacity exceeded: " + std::to_string(g.edge_count()) + " edges, limit " +
                        std::to_string(cap) + " for this mode");
  out = {};
  if (g.edge_count() == 0) {
    // Only K1 has a closed walk through every vertex; its empty trace has
    // no repetition above 0, so it is strong but never d-stable.
    out.exists = g.vertex_count() <= 1 && q.stability != Stability::DStable;
    out.count = out.exists ? 1 : 0;
    if (out.exists && q.mode != SearchMode::Count) out.traces.push_back({});
    return false;
  }
  if (!g.is_connected()) return false;
  if (q.stability == Stability::DStable && g.min_degree() <= q.d) return false;
  return true;
}

Searcher::Searcher(const TraceQuery& q)
    : q_(q),
      g_(q.host),
      len_(2 * static_cast<std::size_t>(q.host.edge_count())),
      rules_(q.rules.empty() ? std::vector<EdgeRule>(static_cast<std::size_t>(q.host.edge_count()), EdgeRule::Free)
                             : q.rules),
      uses_(static_cast<std::size_t>(g_.edge_count()), 0),
      first_fwd_(static_cast<std::size_t>(g_.edge_count()), false),
      in_(static_cast<std::size_t>(g_.vertex_count()), 0),
      out_(in_),
      nb_(len_, {-1, -1}),
      nb_count_(len_, 0) {
  const bool has_arcs = std::find(rules_.begin(), rules_.end(), EdgeRule::Forward) != rules_.end();
  backward_start_ = !rules_.empty() && (rules_[0] == EdgeRule::Free || rules_[0] == EdgeRule::Parallel) &&
                    (q.mode != SearchMode::Exists || has_arcs);
  steps_.reserve(len_);
  undo_.reserve(len_);
}

int Searcher::leave_key(const Step& s) const { return 2 * s.edge + (is_forward(g_, s) ? 0 : 1); }
int Searcher::enter_key(const Step& s) const { return 2 * s.edge + (is_forward(g_, s) ? 1 : 0); }

bool Searcher::rule_allows(const Step& s) const {
  const bool fwd = is_forward(g_, s);
  switch (rules_[s.edge]) {
    case EdgeRule::Free: return true;
    case EdgeRule::Forward: return fwd;
    case EdgeRule::Parallel: return uses_[s.edge] == 0 || first_fwd_[s.edge] == fwd;
    case EdgeRule::Antiparallel: return uses_[s.edge] == 0 || first_fwd_[s.edge] != fwd;
  }
  return false;
}

std::vector<Step> Searcher::candidates() const {
  std::vector<Step> out;
  if (depth_ == 0) {
    if (q_.fix_start) {
      const Link& l = g_.edge(0);
      out.push_back(Step{0, l.u, l.v});
      if (backward_start_) out.push_back(Step{0, l.v, l.u});
    } else {
      for (EdgeId e = 0; e < g_.edge_count(); ++e) {
        const Link& l = g_.edge(e);
        out.push_back(Step{e, l.u, l.v});
        out.push_back(Step{e, l.v, l.u});
      }
    }
    return out;
  }
  const VertexId cur = steps_.back().to;
  for (EdgeId e : g_.incident(cur))
    if (uses_[e] < 2) out.push_back(Step{e, cur, g_.other(e, cur)});
  return out;
}

bool Searcher::link(int a, int b, VertexId at) {
  nb_[a][nb_count_[a]++] = b;
  nb_[b][nb_count_[b]++] = a;
  if (q_.stability == Stability::None) return true;
  // Walk the component of a; it is finished when every end has two links.
  int size = 0;
  bool closed = true;
  int seen[64];
  int stack[64];
  int top = 0, nseen = 0;
  stack[top++] = a;
  seen[nseen++] = a;
  while (top > 0) {
    const int x = stack[--top];
    ++size;
    if (nb_count_[x] < 2) closed = false;
    for (int k = 0; k < nb_count_[x]; ++k) {
      const int y = nb_[x][k];
      if (std::find(seen, seen + nseen, y) != seen + nseen) continue;
      seen[nseen++] = y;
      stack[top++] = y;
    }
  }
  if (!closed) return true;
  if (q_.stability == Stability::Strong) return size >= g_.degree(at);
  return size > q_.d;
}

void Searcher::unlink(int a, int b) {
  --nb_count_[b];
  --nb_count_[a];
}

bool Searcher::place(const Step& s) {
  const EdgeId e = s.edge;
  if (uses_[e] >= 2 || !rule_allows(s)) return false;
  if (depth_ > 0 && s.from != steps_.back().to) return false;
  const bool last = depth_ + 1 == len_;
  if (last && s.to != steps_.front().from) return false;

  Undo u{e, 0, 0, 0, 0, -1, -1, -1, -1};
  const bool first = uses_[e] == 0;
  switch (rules_[e]) {
    case EdgeRule::Free: u.out_from = u.in_to = 1; break;
    case EdgeRule::Parallel:
    case EdgeRule::Forward: u.out_from = u.in_to = first ? 2 : 0; break;
    case EdgeRule::Antiparallel: u.out_from = u.in_to = u.out_to = u.in_from = first ? 1 : 0; break;
  }
  if (out_[s.from] + u.out_from > g_.degree(s.from) || in_[s.to] + u.in_to > g_.degree(s.to) ||
      out_[s.to] + u.out_to > g_.degree(s.to) || in_[s.from] + u.in_from > g_.degree(s.from))
    return false;

  out_[s.from] += u.out_from;
  in_[s.to] += u.in_to;
  out_[s.to] += u.out_to;
  in_[s.from] += u.in_from;
  if (first) first_fwd_[e] = is_forward(g_, s);
  ++uses_[e];

  auto revert = [&] {
    if (u.close_a >= 0) unlink(u.close_a, u.close_b);
    if (u.link_a >= 0) unlink(u.link_a, u.link_b);
    --uses_[e];
    out_[s.from] -= u.out_from;
    in_[s.to] -= u.in_to;
    out_[s.to] -= u.out_to;
    in_[s.from] -= u.in_from;
    return false;
  };

  if (depth_ > 0) {
    u.link_a = enter_key(steps_.back());
    u.link_b = leave_key(s);
    if (!link(u.link_a, u.link_b, s.from)) return revert();
  }
  if (last) {
    u.close_a = enter_key(s);
    u.close_b = leave_key(steps_.front());
    if (!link(u.close_a, u.close_b, s.to)) return revert();
  }
  steps_.push_back(s);
  undo_.push_back(u);
  ++depth_;
  return true;
}

void Searcher::undo() {
  const Undo u = undo_.back();
  const Step s = steps_.back();
  undo_.pop_back();
  steps_.pop_back();
  --depth_;
  if (u.close_a >= 0) unlink(u.close_a, u.close_b);
  if (u.link_a >= 0) unlink(u.link_a, u.link_b);
  --uses_[u.edge];
  out_[s.from] -= u.out_from;
  in_[s.to] -= u.in_to;
  out_[s.to] -= u.out_to;
  in_[s.from] -= u.in_from;
}

bool Searcher::dfs(const std::function<bool(const Walk&)>& visit, const std::atomic<std::size_t>* bound,
                   std::size_t index) {
  if (depth_ == len_) return visit(steps_);
  if (bound && bound->load(std::memory_order_relaxed) < index) return false;
  for (const Step& c : candidates()) {
    if (!place(c)) continue;
    const bool go_on = dfs(visit, bound, index);
    undo();
    if (!go_on) return false;
  }
  return true;
}

std::vector<Walk> Searcher::prefixes(std::size_t depth) {
  std::vector<Walk> out;
  auto rec = [&](auto&& self) -> void {
    if (depth_ == depth) {
      out.push_back(steps_);
      return;
    }
    for (const Step& c : candidates()) {
      if (!place(c)) continue;
      self(self);
      undo();
    }
  };
  rec(rec);
  return out;
}

}  // namespace dtrace::detail
