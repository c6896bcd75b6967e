#include "dtrace/trace.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dtrace/errors.hpp"

namespace dtrace {

std::vector<bool> RestrictionSet::mask(int edge_count) const {
  std::vector<bool> m(static_cast<std::size_t>(edge_count), false);
  for (EdgeId e : antiparallel) {
    if (e < 0 || e >= edge_count) throw InputError("restriction names edge " + std::to_string(e) + " outside the host");
    m[e] = true;
  }
  return m;
}

RestrictionSet RestrictionSet::from_mask(const std::vector<bool>& mask) {
  RestrictionSet r;
  for (std::size_t e = 0; e < mask.size(); ++e)
    if (mask[e]) r.antiparallel.push_back(static_cast<EdgeId>(e));
  return r;
}

Step step_from(const Multigraph& g, EdgeId e, VertexId from) {
  return Step{e, from, g.other(e, from)};
}

bool is_forward(const Multigraph& g, const Step& s) { return g.edge(s.edge).u == s.from; }

Walk reversed(std::span<const Step> w) {
  Walk out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(Step{it->edge, it->to, it->from});
  return out;
}

Walk rotated(std::span<const Step> w, std::size_t k) {
  Walk out(w.begin(), w.end());
  if (!out.empty()) std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
  return out;
}

bool is_closed_walk(const Multigraph& g, std::span<const Step> w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Step& s = w[i];
    if (!g.valid_edge(s.edge)) return false;
    const Link& l = g.edge(s.edge);
    if (!((l.u == s.from && l.v == s.to) || (l.v == s.from && l.u == s.to))) return false;
    if (w[(i + 1) % w.size()].from != s.to) return false;
  }
  return true;
}

ValidationReport validate_double_trace(const Multigraph& g, std::span<const Step> w) {
  ValidationReport r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    r.problems.push_back(std::move(msg));
  };
  if (w.size() != 2 * static_cast<std::size_t>(g.edge_count())) {
    std::ostringstream os;
    os << "length " << w.size() << " differs from 2|E| = " << 2 * g.edge_count();
    fail(os.str());
  }
  std::vector<int> uses(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Step& s = w[i];
    if (!g.valid_edge(s.edge)) {
      fail("step " + std::to_string(i) + " names unknown edge " + std::to_string(s.edge));
      r.bad_positions.push_back(i);
      continue;
    }
    ++uses[s.edge];
    const Link& l = g.edge(s.edge);
    if (!((l.u == s.from && l.v == s.to) || (l.v == s.from && l.u == s.to))) {
      fail("step " + std::to_string(i) + " endpoints do not match edge " + std::to_string(s.edge));
      r.bad_positions.push_back(i);
    }
    const Step& next = w[(i + 1) % w.size()];
    if (next.from != s.to) {
      fail("step " + std::to_string(i) + " ends at " + std::to_string(s.to) + " but the next step starts at " +
           std::to_string(next.from));
      r.bad_positions.push_back(i);
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (uses[e] != 2) {
      fail("edge " + std::to_string(e) + " traversed " + std::to_string(uses[e]) + " times");
      r.bad_edges.push_back(e);
    }
  }
  if (w.empty() && g.vertex_count() > 1) fail("empty walk cannot cover a graph with more than one vertex");
  return r;
}

void require_double_trace(const Multigraph& g, std::span<const Step> w) {
  const ValidationReport r = validate_double_trace(g, w);
  if (!r.ok) throw InputError("not a double trace: " + r.problems.front());
}

std::vector<Direction> classify_directions(const Multigraph& g, std::span<const Step> w) {
  require_double_trace(g, w);
  std::vector<int> first(static_cast<std::size_t>(g.edge_count()), -1);
  std::vector<Direction> out(static_cast<std::size_t>(g.edge_count()), Direction::Parallel);
  for (const Step& s : w) {
    const int fwd = is_forward(g, s) ? 1 : 0;
    if (first[s.edge] < 0) first[s.edge] = fwd;
    else out[s.edge] = first[s.edge] == fwd ? Direction::Parallel : Direction::Antiparallel;
  }
  return out;
}

namespace {

// End through which a step leaves its tail / enters its head.
EdgeEnd leaving_end(const Multigraph& g, const Step& s) { return {s.edge, is_forward(g, s) ? 0 : 1}; }
EdgeEnd entering_end(const Multigraph& g, const Step& s) { return {s.edge, is_forward(g, s) ? 1 : 0}; }
int end_key(const EdgeEnd& e) { return 2 * e.edge + e.side; }

}  // namespace

TransitionSystem::TransitionSystem(const Multigraph& g, std::span<const Step> w)
    : per_vertex_(static_cast<std::size_t>(g.vertex_count())) {
  const int keys = 2 * g.edge_count();
  std::vector<int> parent(static_cast<std::size_t>(keys));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Step& in = w[i];
    const Step& out = w[(i + 1) % w.size()];
    parent[find(end_key(entering_end(g, in)))] = find(end_key(leaving_end(g, out)));
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<EdgeEnd> ends;
    for (EdgeId e : g.incident(v)) {
      const Link& l = g.edge(e);
      if (l.u == l.v) {
        // Loops appear twice in the incidence list; emit each side once.
        EdgeEnd a{e, 0}, b{e, 1};
        if (std::find(ends.begin(), ends.end(), a) == ends.end()) {
          ends.push_back(a);
          ends.push_back(b);
        }
      } else {
        ends.push_back({e, l.u == v ? 0 : 1});
      }
    }
    std::sort(ends.begin(), ends.end());
    std::vector<TransitionComponent>& comps = per_vertex_[v];
    std::vector<int> roots;
    for (const EdgeEnd& end : ends) {
      const int r = find(end_key(end));
      auto it = std::find(roots.begin(), roots.end(), r);
      std::size_t idx = static_cast<std::size_t>(it - roots.begin());
      if (it == roots.end()) {
        roots.push_back(r);
        comps.emplace_back();
      }
      comps[idx].ends.push_back(end);
      comps[idx].neighbors.push_back(g.other(end.edge, v));
    }
  }
}

int TransitionSystem::nontrivial_count() const {
  int total = 0;
  for (const auto& comps : per_vertex_)
    if (comps.size() >= 2) total += static_cast<int>(comps.size());
  return total;
}

std::size_t TransitionSystem::smallest_repetition(VertexId v) const {
  const auto& comps = per_vertex_[static_cast<std::size_t>(v)];
  if (comps.empty()) return 0;
  std::size_t best = comps.front().size();
  for (const auto& c : comps) best = std::min(best, c.size());
  return best;
}

std::vector<TransitionComponent> repetition_components(const Multigraph& g, std::span<const Step> w, VertexId v) {
  require_double_trace(g, w);
  if (!g.valid_vertex(v)) throw InputError("vertex out of range");
  TransitionSystem ts(g, w);
  auto at = ts.at(v);
  return {at.begin(), at.end()};
}

bool is_strong(const Multigraph& g, std::span<const Step> w) {
  require_double_trace(g, w);
  TransitionSystem ts(g, w);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (ts.at(v).size() > 1) return false;
  return true;
}

bool is_d_stable(const Multigraph& g, std::span<const Step> w, int d) {
  require_double_trace(g, w);
  if (d <= 0) return true;
  TransitionSystem ts(g, w);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (ts.smallest_repetition(v) <= static_cast<std::size_t>(d)) return false;
  return true;
}

bool check_restriction(const Multigraph& g, std::span<const Step> w, const RestrictionSet& r) {
  const std::vector<Direction> dirs = classify_directions(g, w);
  const std::vector<bool> anti = r.mask(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if ((dirs[e] == Direction::Antiparallel) != anti[e]) return false;
  return true;
}

bool respects_arcs(const Multigraph& g, std::span<const Step> w, std::span<const EdgeId> arcs) {
  std::vector<bool> is_arc(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId a : arcs) is_arc[a] = true;
  for (const Step& s : w)
    if (is_arc[s.edge] && !is_forward(g, s)) return false;
  return true;
}

std::vector<std::pair<EdgeId, bool>> direction_multiset(const Multigraph& g, std::span<const Step> w) {
  std::vector<std::pair<EdgeId, bool>> out;
  out.reserve(w.size());
  for (const Step& s : w) out.emplace_back(s.edge, is_forward(g, s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dtrace
