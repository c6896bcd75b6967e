#pragma once

// Graph populations and small helpers shared by the unit and acceptance tests.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "dtrace/graph.hpp"
#include "dtrace/trace.hpp"

namespace testing_support {

using namespace dtrace;

inline Graph complete(int n) {
  std::vector<Link> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

inline Graph cycle(int n) {
  std::vector<Link> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, e);
}

inline Graph path(int n) {
  std::vector<Link> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}

inline Graph star(int leaves) {
  std::vector<Link> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(leaves + 1, e);
}

inline Graph from_mask(int n, unsigned mask) {
  std::vector<Link> e;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (mask >> bit & 1u) e.push_back({i, j});
  return Graph(n, e);
}

/// Smallest adjacency bitmask over all vertex permutations.
inline unsigned canonical_mask(int n, unsigned mask) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> pos(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit) pos[i][j] = pos[j][i] = bit;
  unsigned best = ~0u;
  do {
    unsigned m = 0;
    bit = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++bit)
        if (mask >> bit & 1u) m |= 1u << pos[perm[i]][perm[j]];
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Every connected simple graph on 1..max_n vertices, one per isomorphism type.
inline std::vector<Graph> connected_census(int max_n) {
  std::vector<Graph> out;
  for (int n = 1; n <= max_n; ++n) {
    const int pairs = n * (n - 1) / 2;
    std::set<unsigned> seen;
    for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
      const Graph g = from_mask(n, mask);
      if (!g.is_connected()) continue;
      if (seen.insert(canonical_mask(n, mask)).second) out.push_back(g);
    }
  }
  return out;
}

/// Connected labelled graphs on n vertices with edge counts in [lo, hi].
inline std::vector<Graph> random_connected(int count, int n, int lo, int hi, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Link> all;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all.push_back({i, j});
  std::vector<Graph> out;
  while (static_cast<int>(out.size()) < count) {
    const int m = std::uniform_int_distribution<int>(lo, hi)(rng);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Link> pick(all.begin(), all.begin() + m);
    std::sort(pick.begin(), pick.end(), [](const Link& a, const Link& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    Graph g(n, pick);
    if (g.is_connected()) out.push_back(std::move(g));
  }
  return out;
}

inline RestrictionSet subset(int m, unsigned mask) {
  RestrictionSet r;
  for (int e = 0; e < m; ++e)
    if (mask >> e & 1u) r.antiparallel.push_back(e);
  return r;
}

inline std::multiset<std::pair<EdgeId, bool>> direction_bag(const Multigraph& g, std::span<const Step> w) {
  std::multiset<std::pair<EdgeId, bool>> out;
  for (const Step& s : w) out.insert({s.edge, is_forward(g, s)});
  return out;
}

}  // namespace testing_support
