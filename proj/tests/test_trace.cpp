#include <doctest.h>

#include "dtrace/construction.hpp"
#include "dtrace/enumeration.hpp"
#include "dtrace/errors.hpp"
#include "dtrace/trace.hpp"
#include "support.hpp"

using namespace dtrace;
using namespace testing_support;

namespace {

Walk doubled_tour(const Graph& g) {
  Walk t = euler_tour(g, whole_graph(g));
  Walk w = t;
  w.insert(w.end(), t.begin(), t.end());
  return w;
}

Walk oracle_trace(const TraceQuery& q) {
  const OracleResult r = oracle_search(q);
  REQUIRE(r.exists);
  return r.traces.front();
}

// Vertex 0 joined to 1..6, which form the path 1-2-3-4-5-6.
Graph six_spoke() {
  return Graph(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
}

}  // namespace

TEST_CASE("validate_double_trace") {
  const Graph k4 = complete(4);
  const Walk w = oracle_trace(TraceQuery::uniform(k4, EdgeRule::Free));
  CHECK(w.size() == 12);
  CHECK(validate_double_trace(k4, w).ok);

  Walk short_w(w.begin(), w.end() - 1);
  const ValidationReport r = validate_double_trace(k4, short_w);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.problems.empty());

  // One triangle edge three times.
  const Graph c3 = cycle(3);
  const Walk triple{{0, 0, 1}, {0, 1, 0}, {0, 0, 1}, {1, 1, 2}, {2, 2, 0}, {0, 0, 1}};
  const ValidationReport t = validate_double_trace(c3, triple);
  CHECK_FALSE(t.ok);
  CHECK(std::find(t.bad_edges.begin(), t.bad_edges.end(), 0) != t.bad_edges.end());

  const Walk broken{{0, 0, 1}, {2, 2, 0}};
  CHECK_FALSE(validate_double_trace(path(2), broken).ok);
  CHECK_THROWS_AS(require_double_trace(c3, triple), InputError);
}

TEST_CASE("classify_directions") {
  const Graph c3 = cycle(3);
  for (Direction d : classify_directions(c3, doubled_tour(c3))) CHECK(d == Direction::Parallel);
  const Graph p2 = path(2);
  CHECK(classify_directions(p2, Walk{{0, 0, 1}, {0, 1, 0}}).front() == Direction::Antiparallel);

  // Labels survive rotation and reversal.
  const Graph k4 = complete(4);
  const Walk w = oracle_trace(TraceQuery::restricted(k4, RestrictionSet{{0, 1, 2}}));
  const auto base = classify_directions(k4, w);
  for (std::size_t k = 0; k < w.size(); ++k) CHECK(classify_directions(k4, rotated(w, k)) == base);
  CHECK(classify_directions(k4, reversed(w)) == base);
}

TEST_CASE("repetition components") {
  const Graph k4 = complete(4);
  const Walk w = oracle_trace(TraceQuery::uniform(k4, EdgeRule::Free, Stability::Strong));
  for (VertexId v = 0; v < 4; ++v) {
    const auto comps = repetition_components(k4, w, v);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 3);
  }

  // Degree-2 vertices always have one component.
  const Graph c5 = cycle(5);
  const Walk wc = doubled_tour(c5);
  for (VertexId v = 0; v < 5; ++v) CHECK(repetition_components(c5, wc, v).size() == 1);

  // Degree-6 vertex whose trace always re-enters the side it left: build a
  // strong trace with vertex 0 split into 0 (neighbours 1,2,3) and 7
  // (neighbours 4,5,6), then identify 7 with 0.
  const Graph g = six_spoke();
  const Graph split(8, {{0, 1}, {0, 2}, {0, 3}, {7, 4}, {7, 5}, {7, 6}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  Walk glued = strong_trace(split).steps;
  for (Step& s : glued) {
    if (s.from == 7) s.from = 0;
    if (s.to == 7) s.to = 0;
    s.edge = *g.edge_between(s.from, s.to);
  }
  REQUIRE(validate_double_trace(g, glued).ok);
  const auto comps = repetition_components(g, glued, 0);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].size() == 3);
  CHECK(comps[1].size() == 3);
  CHECK(comps[0].neighbors == std::vector<VertexId>{1, 2, 3});
  CHECK(comps[1].neighbors == std::vector<VertexId>{4, 5, 6});
  CHECK_FALSE(is_d_stable(g, glued, 3));
  CHECK_FALSE(is_strong(g, glued));
  for (VertexId v = 1; v < 7; ++v) CHECK(repetition_components(g, glued, v).size() == 1);
}

TEST_CASE("component structure is invariant under rotation and reversal") {
  const Graph g(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  TraceQuery q = TraceQuery::uniform(g, EdgeRule::Free, Stability::None);
  q.mode = SearchMode::EnumerateAll;
  const auto traces = oracle_search(q).traces;
  REQUIRE(!traces.empty());
  for (std::size_t i = 0; i < traces.size(); i += 7) {
    const Walk& w = traces[i];
    for (VertexId v = 0; v < 5; ++v) {
      auto ends = [&](const Walk& x) {
        std::vector<std::vector<EdgeEnd>> out;
        for (const auto& c : repetition_components(g, x, v)) out.push_back(c.ends);
        return out;
      };
      CHECK(ends(rotated(w, 3)) == ends(w));
      CHECK(ends(reversed(w)) == ends(w));
    }
  }
}

TEST_CASE("is_strong") {
  const Graph fig8(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  const Walk a{{0, 0, 1}, {1, 1, 2}, {2, 2, 0}};
  const Walk b{{3, 0, 3}, {4, 3, 4}, {5, 4, 0}};
  auto concat = [](std::initializer_list<const Walk*> parts) {
    Walk out;
    for (const Walk* p : parts) std::copy(p->begin(), p->end(), std::back_inserter(out));
    return out;
  };
  const Walk w = concat({&a, &a, &b, &b});
  REQUIRE(validate_double_trace(fig8, w).ok);
  // A A B B links the two triangles at 0 through both seams.
  CHECK(is_strong(fig8, w));
  CHECK(repetition_components(fig8, w, 0).size() == 1);
  // A B A B repeats the same two transitions: two components at 0.
  const Walk abab = concat({&a, &b, &a, &b});
  CHECK_FALSE(is_strong(fig8, abab));
  CHECK(repetition_components(fig8, abab, 0).size() == 2);

  CHECK(is_strong(path(2), Walk{{0, 0, 1}, {0, 1, 0}}));
  CHECK(is_strong(Graph(1), Walk{}));
}

TEST_CASE("is_d_stable") {
  CHECK(is_d_stable(cycle(3), doubled_tour(cycle(3)), 0));
  CHECK(is_d_stable(cycle(3), doubled_tour(cycle(3)), 1));
  CHECK_FALSE(is_d_stable(cycle(3), doubled_tour(cycle(3)), 2));
  // An isolated vertex has only the empty repetition.
  CHECK_FALSE(is_d_stable(Graph(1), Walk{}, 1));
  CHECK(is_d_stable(Graph(1), Walk{}, 0));
}

TEST_CASE("check_restriction and respects_arcs") {
  const Graph c3 = cycle(3);
  const Walk w = doubled_tour(c3);
  CHECK(check_restriction(c3, w, RestrictionSet{}));
  CHECK_FALSE(check_restriction(c3, w, RestrictionSet{{1}}));
  const Graph k4 = complete(4);
  const RestrictionSet star{{0, 1, 2}};
  CHECK(check_restriction(k4, oracle_trace(TraceQuery::restricted(k4, star)), star));
  CHECK(respects_arcs(c3, w, EdgeSet{0, 1, 2}) != respects_arcs(c3, reversed(w), EdgeSet{0, 1, 2}));
}

TEST_CASE("repetition complements and stability implications over enumerated traces") {
  std::vector<Graph> hosts{complete(4), Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {3, 4}}),
                           Graph(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {2, 3}, {3, 4}})};
  for (const Graph& g : hosts) {
    TraceQuery q = TraceQuery::uniform(g, EdgeRule::Free, Stability::None);
    q.mode = SearchMode::EnumerateAll;
    const auto traces = oracle_search(q).traces;
    REQUIRE(!traces.empty());
    for (const Walk& w : traces) {
      // Repetitions are unions of components; complements of unions are
      // unions too, so the neighbour sets of components partition N(v).
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<VertexId> all;
        for (const auto& c : repetition_components(g, w, v)) all.insert(all.end(), c.neighbors.begin(), c.neighbors.end());
        std::sort(all.begin(), all.end());
        CHECK(all == g.neighbors(v));
      }
      for (int d = 1; d <= 3; ++d) {
        if (g.min_degree() > d && is_strong(g, w)) CHECK(is_d_stable(g, w, d));
        if (g.min_degree() > d && g.max_degree() < 2 * d + 2 && is_d_stable(g, w, d)) CHECK(is_strong(g, w));
      }
    }
  }
}

TEST_CASE("nontrivial repetition count") {
  const Graph fig8(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  Walk t = euler_tour(fig8, whole_graph(fig8));
  Walk w = t;
  w.insert(w.end(), t.begin(), t.end());
  const TransitionSystem ts(fig8, w);
  CHECK(ts.nontrivial_count() == 2);
  CHECK(ts.smallest_repetition(0) == 2);
}
