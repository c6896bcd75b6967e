// Serial vs OpenMP oracle on a few fixed queries. Prints wall time and
// checks that both return the same answer.

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "dtrace/enumeration.hpp"
#include "dtrace/graph.hpp"

using namespace dtrace;

namespace {

Graph complete(int n) {
  std::vector<Link> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run(const char* name, const TraceQuery& q) {
  OracleResult a, b;
  const double ts = seconds([&] { a = oracle_search(q); });
  const double tp = seconds([&] { b = oracle_search_parallel(q); });
  const bool same = a.exists == b.exists && a.count == b.count && a.traces == b.traces;
  std::printf("%-40s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  count %llu  %s\n", name, ts, tp,
              tp > 0 ? ts / tp : 0.0, static_cast<unsigned long long>(a.count), same ? "same" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  const Graph k4 = complete(4);
  TraceQuery q = TraceQuery::uniform(k4, EdgeRule::Free, Stability::Strong);
  q.mode = SearchMode::Count;
  q.fix_start = false;
  run("K4 strong, raw count", q);

  // K4 plus a pendant path: 9 edges.
  const Graph g9(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {2, 5}});
  TraceQuery c = TraceQuery::uniform(g9, EdgeRule::Free, Stability::Strong);
  c.mode = SearchMode::Count;
  run("9-edge graph strong, count", c);

  TraceQuery anti = TraceQuery::uniform(g9, EdgeRule::Antiparallel, Stability::Strong);
  run("9-edge graph antiparallel strong, exists", anti);

  const Graph k5 = complete(5);
  TraceQuery par = TraceQuery::uniform(k5, EdgeRule::Parallel, Stability::DStable, 3);
  run("K5 parallel 3-stable, exists", par);
  return 0;
}
