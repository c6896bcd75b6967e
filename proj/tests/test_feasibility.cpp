#include <doctest.h>

#include "dtrace/enumeration.hpp"
#include "dtrace/errors.hpp"
#include "dtrace/feasibility.hpp"
#include "support.hpp"

using namespace dtrace;
using namespace testing_support;

namespace {

Graph wheel(int rim) {
  std::vector<Link> e;
  for (int i = 1; i <= rim; ++i) e.push_back({0, i});
  for (int i = 1; i <= rim; ++i) e.push_back({i, i % rim + 1});
  return Graph(rim + 1, e);
}

}  // namespace

TEST_CASE("find_admissible_tree") {
  const Multigraph theta(2, {{0, 1}, {0, 1}, {0, 1}});
  const std::vector<bool> w{true, false};
  const auto cert = find_admissible_tree(theta, w);
  REQUIRE(cert);
  CHECK(cert->tree_edges.size() == 1);
  REQUIRE(cert->co_tree.components.size() == 1);
  CHECK(cert->co_tree.components[0].edges.size() == 2);
  CHECK(cert->co_tree.components[0].has_witness);
  CHECK(certificate_valid(theta, w, *cert));

  CHECK_FALSE(find_admissible_tree(complete(4), {}).has_value());

  const Graph tree(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  const auto t = find_admissible_tree(tree, {});
  REQUIRE(t);
  CHECK(t->tree_edges.size() == 4);
  CHECK(t->co_tree.components.empty());

  CHECK_THROWS_AS(find_admissible_tree(Graph(4, {{0, 1}, {2, 3}}), {}), PreconditionError);
}

TEST_CASE("certificate_valid rejects tampering") {
  const Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  auto cert = find_admissible_tree(g, std::vector<bool>(4, true));
  REQUIRE(cert);
  CHECK(certificate_valid(g, std::vector<bool>(4, true), *cert));
  auto bad = *cert;
  bad.tree_edges.pop_back();
  CHECK_FALSE(certificate_valid(g, std::vector<bool>(4, true), bad));
  bad = *cert;
  bad.deficiency += 1;
  CHECK_FALSE(certificate_valid(g, std::vector<bool>(4, true), bad));
}

TEST_CASE("strong and d-stable verdicts") {
  CHECK(has_strong_trace(complete(4)).verdict);
  CHECK(has_strong_trace(path(2)).verdict);
  CHECK(has_strong_trace(cycle(5)).verdict);
  CHECK(has_d_stable_trace(complete(4), 2).verdict);
  CHECK_FALSE(has_d_stable_trace(complete(4), 3).verdict);
  CHECK(has_d_stable_trace(cycle(5), 1).verdict);
  CHECK_THROWS_AS(has_strong_trace(Graph(2)), PreconditionError);
}

TEST_CASE("antiparallel verdicts") {
  CHECK(has_antiparallel_strong_trace(star(4)).verdict);
  CHECK(has_antiparallel_strong_trace(path(5)).verdict);
  const FeasibilityAnswer k4 = has_antiparallel_strong_trace(complete(4));
  CHECK_FALSE(k4.verdict);
  CHECK_FALSE(k4.violated.empty());
  CHECK_FALSE(has_antiparallel_strong_trace(cycle(3)).verdict);
  CHECK_FALSE(has_antiparallel_d_stable_trace(complete(4), 1).verdict);

  const Graph w5 = wheel(5);
  const bool verdict = has_antiparallel_d_stable_trace(w5, 1).verdict;
  CHECK(verdict == oracle_search(TraceQuery::uniform(w5, EdgeRule::Antiparallel, Stability::DStable, 1)).exists);
}

TEST_CASE("parallel verdicts") {
  CHECK(has_parallel_strong_trace(cycle(3)).verdict);
  CHECK_FALSE(has_parallel_strong_trace(complete(4)).verdict);
  CHECK(has_parallel_strong_trace(complete(5)).verdict);
  CHECK(has_parallel_d_stable_trace(complete(5), 3).verdict);
  CHECK_FALSE(has_parallel_d_stable_trace(complete(5), 4).verdict);
  CHECK(has_parallel_d_stable_trace(cycle(3), 1).verdict);
}

TEST_CASE("E-restricted verdicts") {
  const Graph k4 = complete(4);
  // Perfect matching 01 / 23 is edges 0 and 5.
  CHECK(has_E_restricted_double_trace(k4, RestrictionSet{{0, 5}}).verdict);
  CHECK(oracle_search(TraceQuery::restricted(k4, RestrictionSet{{0, 5}}, Stability::None)).exists);
  CHECK_FALSE(has_E_restricted_double_trace(k4, RestrictionSet{{0}}).verdict);
  CHECK(has_E_restricted_double_trace(k4, RestrictionSet{{0, 1, 2, 3, 4, 5}}).verdict);

  const RestrictionSet star{{0, 1, 2}};
  const FeasibilityAnswer a = has_E_restricted_strong_trace(k4, star);
  CHECK(a.verdict);
  REQUIRE(a.quotient);
  CHECK(a.quotient->contraction.quotient.vertex_count() == 2);
  CHECK(a.quotient->contraction.quotient.edge_count() == 3);
  CHECK(a.quotient->contracted_witnesses_only);
  CHECK(oracle_search(TraceQuery::restricted(k4, star)).exists);
  // E' a single edge: odd at its endpoints.
  CHECK_FALSE(has_E_restricted_strong_trace(k4, RestrictionSet{{0, 1, 2, 3, 4}}).verdict);
  CHECK_FALSE(has_E_restricted_strong_trace(k4, RestrictionSet{{0, 1, 2, 3, 4, 5}}).verdict);

  CHECK(has_E_restricted_d_stable_trace(k4, star, 2).verdict);
  for (unsigned mask = 0; mask < 64; ++mask) CHECK_FALSE(has_E_restricted_d_stable_trace(k4, subset(6, mask), 3).verdict);
  CHECK(has_E_restricted_d_stable_trace(complete(5), RestrictionSet{}, 3).verdict);

  CHECK_THROWS_AS(has_E_restricted_strong_trace(k4, RestrictionSet{{9}}), InputError);
}

TEST_CASE("restricted verdict reduces to the uniform cases") {
  for (const Graph& g : connected_census(5)) {
    std::vector<EdgeId> all(static_cast<std::size_t>(g.edge_count()));
    std::iota(all.begin(), all.end(), 0);
    CHECK(has_E_restricted_strong_trace(g, RestrictionSet{all}).verdict == has_antiparallel_strong_trace(g).verdict);
    CHECK(has_E_restricted_strong_trace(g, RestrictionSet{}).verdict == has_parallel_strong_trace(g).verdict);
  }
}

TEST_CASE("admissible tree on the simplified quotient agrees with the direct quotient search") {
  auto population = connected_census(5);
  auto extra = random_connected(40, 6, 5, 9, 3);
  population.insert(population.end(), extra.begin(), extra.end());
  for (const Graph& g : population) {
    for (unsigned mask = 0; mask < (1u << g.edge_count()); ++mask) {
      const RestrictionSet r = subset(g.edge_count(), mask);
      const FeasibilityAnswer a = has_E_restricted_strong_trace(g, r);
      if (!a.satisfied.empty() && a.satisfied.front().find("even") != std::string::npos)
        CHECK(a.verdict == quotient_tree_direct(g, r).has_value());
    }
  }
}

TEST_CASE("mixed Euler feasibility") {
  const MixedGraph dc3(3, {{0, 1, true}, {1, 2, true}, {2, 0, true}});
  CHECK(mixed_euler_feasible(dc3));
  CHECK(mixed_euler_subset_condition(dc3));
  const MixedGraph in2(3, {{0, 1, true}, {2, 1, true}});
  CHECK_FALSE(mixed_euler_feasible(in2));
  CHECK_FALSE(mixed_euler_subset_condition(in2));
  const MixedGraph c4(4, {{0, 1, false}, {1, 2, false}, {2, 3, false}, {3, 0, false}});
  CHECK(mixed_euler_feasible(c4));
  const auto orient = balanced_orientation(MixedGraph(3, {{0, 1, true}, {1, 2, false}, {0, 2, false}}));
  REQUIRE(orient);
  CHECK((*orient)[0]);
  CHECK((*orient)[1]);
  CHECK_FALSE((*orient)[2]);
}

TEST_CASE("mixed restricted verdicts") {
  const MixedGraph dc3(3, {{0, 1, true}, {1, 2, true}, {2, 0, true}});
  CHECK(has_E_restricted_strong_trace_mixed(dc3, RestrictionSet{}).verdict);
  CHECK(oracle_search(TraceQuery::mixed(dc3, RestrictionSet{})).exists);

  const MixedGraph arc_edge(2, {{0, 1, true}, {0, 1, false}});
  CHECK_FALSE(has_E_restricted_strong_trace_mixed(arc_edge, RestrictionSet{{1}}).verdict);
  CHECK_THROWS_AS(has_E_restricted_strong_trace_mixed(arc_edge, RestrictionSet{{0}}), InputError);

  CHECK_FALSE(has_E_restricted_d_stable_trace_mixed(dc3, RestrictionSet{}, 2).verdict);
  const bool one = has_E_restricted_d_stable_trace_mixed(dc3, RestrictionSet{}, 1).verdict;
  CHECK(one == oracle_search(TraceQuery::mixed(dc3, RestrictionSet{}, Stability::DStable, 1)).exists);

  // No arcs: same verdicts as the undirected checks.
  for (const Graph& g : connected_census(4)) {
    std::vector<MixedLink> links;
    for (const Link& l : g.edges()) links.push_back({l.u, l.v, false});
    const MixedGraph b(g.vertex_count(), links);
    for (unsigned mask = 0; mask < (1u << g.edge_count()); ++mask) {
      const RestrictionSet r = subset(g.edge_count(), mask);
      CHECK(has_E_restricted_strong_trace_mixed(b, r).verdict == has_E_restricted_strong_trace(g, r).verdict);
      CHECK(has_E_restricted_d_stable_trace_mixed(b, r, 1).verdict == has_E_restricted_d_stable_trace(g, r, 1).verdict);
    }
  }
}

TEST_CASE("tree search capacity outcome") {
  TreeSearchLimits tight;
  tight.max_vertices = 2;
  tight.node_budget = 3;
  CHECK_THROWS_AS(find_admissible_tree(complete(5), {}, tight), CapacityError);
  // The exact range ignores the budget.
  TreeSearchLimits exact;
  exact.node_budget = 1;
  CHECK_FALSE(find_admissible_tree(complete(4), {}, exact).has_value());
}
