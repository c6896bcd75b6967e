#include <algorithm>
#include <atomic>
#include <limits>

#include <omp.h>

#include "dtrace/enumeration.hpp"
#include "oracle_engine.hpp"

namespace dtrace {

// Work is split over every search state a few steps deep. Results are merged
// in prefix order, which is DFS order, so the answer (including the witness
// trace in exists mode) matches the serial search.
OracleResult oracle_search_parallel(const TraceQuery& q, const OracleLimits& limits, int threads) {
  OracleResult res;
  if (!detail::prepare(q, limits, res)) return res;
  const std::size_t len = 2 * static_cast<std::size_t>(q.host.edge_count());
  std::vector<Walk> prefixes = detail::Searcher(q).prefixes(std::min<std::size_t>(3, len - 1));

  struct Part {
    bool exists = false;
    std::uint64_t count = 0;
    std::vector<Walk> traces;
  };
  std::vector<Part> parts(prefixes.size());
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  const bool exists_mode = q.mode == SearchMode::Exists;
  const long n = static_cast<long>(prefixes.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (exists_mode && best.load(std::memory_order_relaxed) < idx) continue;
    detail::Searcher s(q);
    for (const Step& st : prefixes[idx]) s.place(st);
    Part& p = parts[idx];
    s.dfs(
        [&](const Walk& w) {
          p.exists = true;
          ++p.count;
          if (q.mode != SearchMode::Count) p.traces.push_back(w);
          if (!exists_mode) return true;
          std::size_t cur = best.load();
          while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
          }
          return false;
        },
        exists_mode ? &best : nullptr, idx);
  }

  for (Part& p : parts) {
    if (exists_mode && p.exists) {
      res.exists = true;
      res.count = 1;
      res.traces.push_back(std::move(p.traces.front()));
      break;
    }
    res.exists = res.exists || p.exists;
    res.count += p.count;
    for (Walk& w : p.traces) res.traces.push_back(std::move(w));
  }
  if (q.mode == SearchMode::EnumerateAll) std::sort(res.traces.begin(), res.traces.end());
  return res;
}

}  // namespace dtrace
