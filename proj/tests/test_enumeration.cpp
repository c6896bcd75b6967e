#include <doctest.h>

#include "dtrace/enumeration.hpp"
#include "dtrace/errors.hpp"
#include "support.hpp"

using namespace dtrace;
using namespace testing_support;

TEST_CASE("oracle exists queries") {
  CHECK(oracle_search(TraceQuery::uniform(complete(4), EdgeRule::Free)).exists);
  CHECK_FALSE(oracle_search(TraceQuery::uniform(complete(4), EdgeRule::Antiparallel)).exists);
  CHECK(oracle_search(TraceQuery::uniform(star(3), EdgeRule::Antiparallel)).exists);
  CHECK_FALSE(oracle_search(TraceQuery::uniform(complete(4), EdgeRule::Parallel)).exists);
  CHECK(oracle_search(TraceQuery::uniform(complete(5), EdgeRule::Parallel, Stability::DStable, 3)).exists);
  CHECK_FALSE(oracle_search(TraceQuery::uniform(complete(4), EdgeRule::Free, Stability::DStable, 3)).exists);

  const OracleResult r = oracle_search(TraceQuery::uniform(complete(4), EdgeRule::Free));
  REQUIRE(r.traces.size() == 1);
  CHECK(validate_double_trace(complete(4), r.traces.front()).ok);
  CHECK(is_strong(complete(4), r.traces.front()));

  // Edgeless host.
  CHECK(oracle_search(TraceQuery::uniform(Graph(1), EdgeRule::Free)).exists);
  CHECK_FALSE(oracle_search(TraceQuery::uniform(Graph(1), EdgeRule::Free, Stability::DStable, 1)).exists);
}

TEST_CASE("oracle counts") {
  TraceQuery q = TraceQuery::uniform(cycle(3), EdgeRule::Free, Stability::None);
  q.mode = SearchMode::Count;
  q.fix_start = false;
  // Doubled tour in either direction, plus the walks that reverse along
  // the way; a closed walk on C3 of length 6 using each edge twice.
  const std::uint64_t raw = oracle_search(q).count;
  q.mode = SearchMode::EnumerateAll;
  const OracleResult all = oracle_search(q);
  CHECK(all.count == raw);
  CHECK(all.traces.size() == raw);
  CHECK(std::is_sorted(all.traces.begin(), all.traces.end()));
  for (const Walk& w : all.traces) CHECK(validate_double_trace(cycle(3), w).ok);
  // Every rotation of a raw trace is another raw trace.
  for (const Walk& w : all.traces)
    for (std::size_t k = 1; k < w.size(); ++k)
      CHECK(std::binary_search(all.traces.begin(), all.traces.end(), rotated(w, k)));
}

TEST_CASE("oracle capacity and input guards") {
  std::vector<Link> e;
  for (int i = 0; i < 11; ++i) e.push_back({i, (i + 1) % 11});
  const Graph c11(11, e);
  CHECK_THROWS_AS(oracle_search(TraceQuery::uniform(c11, EdgeRule::Free)), CapacityError);
  TraceQuery q = TraceQuery::uniform(cycle(10), EdgeRule::Free);
  CHECK_NOTHROW(oracle_search(q));
  q.mode = SearchMode::Count;
  CHECK_THROWS_AS(oracle_search(q), CapacityError);
  CHECK_THROWS_AS(oracle_search_parallel(q), CapacityError);
  CHECK_FALSE(oracle_search(TraceQuery::uniform(Graph(4, {{0, 1}, {2, 3}}), EdgeRule::Free)).exists);
}

TEST_CASE("serial and parallel oracle agree") {
  const std::vector<Graph> hosts{complete(4), cycle(5), Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {3, 4}})};
  for (const Graph& g : hosts) {
    for (EdgeRule rule : {EdgeRule::Free, EdgeRule::Parallel, EdgeRule::Antiparallel}) {
      for (SearchMode mode : {SearchMode::Exists, SearchMode::Count, SearchMode::EnumerateAll}) {
        TraceQuery q = TraceQuery::uniform(g, rule, Stability::Strong);
        q.mode = mode;
        const OracleResult s = oracle_search(q);
        for (int threads : {1, 3}) {
          const OracleResult p = oracle_search_parallel(q, {}, threads);
          CHECK(p.exists == s.exists);
          CHECK(p.count == s.count);
          CHECK(p.traces == s.traces);
        }
      }
    }
  }
}

TEST_CASE("canonical_form") {
  const Graph c3 = cycle(3);
  const auto auts = automorphisms(c3);
  TraceQuery q = TraceQuery::uniform(c3, EdgeRule::Free, Stability::None);
  q.mode = SearchMode::EnumerateAll;
  q.fix_start = false;
  const auto traces = oracle_search(q).traces;
  REQUIRE(!traces.empty());
  const Walk& w = traces.front();
  const Walk c = canonical_form(c3, w, auts);
  CHECK(canonical_form(c3, reversed(w), auts) == c);
  for (std::size_t k = 0; k < w.size(); ++k) CHECK(canonical_form(c3, rotated(w, k), auts) == c);
  for (const Walk& x : orbit(c3, w, auts)) CHECK(canonical_form(c3, x, auts) == c);
  CHECK(validate_double_trace(c3, c).ok);

  // Without symmetries the canonical form is still rotation invariant.
  const std::vector<std::vector<VertexId>> id{{0, 1, 2}};
  CHECK(canonical_form(c3, rotated(w, 2), id) == canonical_form(c3, w, id));
  CHECK_THROWS_AS(canonical_form(c3, Walk{{0, 0, 1}}, auts), InputError);
}

TEST_CASE("enumerate_classes") {
  const Graph c3 = cycle(3);
  const auto c3_classes = enumerate_classes(c3, TraceQuery::uniform(c3, EdgeRule::Parallel), automorphisms(c3));
  REQUIRE(c3_classes.size() == 1);
  CHECK(c3_classes[0].size == 6);

  const Graph k4 = complete(4);
  TraceQuery q = TraceQuery::uniform(k4, EdgeRule::Free, Stability::Strong);
  const auto classes = enumerate_classes(k4, q, automorphisms(k4));
  CHECK(classes.size() == 3);
  std::size_t total = 0;
  for (const auto& c : classes) total += c.size;
  q.mode = SearchMode::Count;
  q.fix_start = false;
  CHECK(total == oracle_search(q).count);
  CHECK(std::is_sorted(classes.begin(), classes.end(),
                       [](const auto& a, const auto& b) { return a.representative < b.representative; }));

  CHECK(enumerate_classes(k4, TraceQuery::uniform(k4, EdgeRule::Antiparallel), automorphisms(k4)).empty());

  // Parallel evaluation gives the same classes.
  const auto par = enumerate_classes(k4, TraceQuery::uniform(k4, EdgeRule::Free), automorphisms(k4), {}, 3);
  CHECK(par.size() == classes.size());
  for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i].representative == classes[i].representative);
}

TEST_CASE("stabilizer and restricted classes") {
  const Graph k4 = complete(4);
  CHECK(stabilizer(k4, EdgeSet{0, 1, 2}).size() == 6);
  CHECK(stabilizer(k4, EdgeSet{}).size() == 24);
  CHECK(stabilizer(k4, EdgeSet{0, 5}).size() == 8);

  const auto all = enumerate_restricted_classes(k4, 3);
  CHECK(all.size() == 20);
  int nonempty = 0;
  for (const auto& rc : all) {
    CHECK(rc.antiparallel.size() == 3);
    if (!rc.classes.empty()) ++nonempty;
    for (const auto& c : rc.classes) CHECK(check_restriction(k4, c.representative, RestrictionSet{rc.antiparallel}));
  }
  CHECK(nonempty == 4);
  CHECK_THROWS_AS(enumerate_restricted_classes(k4, 7), InputError);
}
