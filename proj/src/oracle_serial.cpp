#include <algorithm>

#include "dtrace/enumeration.hpp"
#include "oracle_engine.hpp"

namespace dtrace {

OracleResult oracle_search(const TraceQuery& q, const OracleLimits& limits) {
  OracleResult res;
  if (!detail::prepare(q, limits, res)) return res;
  detail::Searcher s(q);
  s.dfs([&](const Walk& w) {
    res.exists = true;
    ++res.count;
    if (q.mode != SearchMode::Count) res.traces.push_back(w);
    return q.mode != SearchMode::Exists;
  });
  if (q.mode == SearchMode::EnumerateAll) std::sort(res.traces.begin(), res.traces.end());
  return res;
}

}  // namespace dtrace
