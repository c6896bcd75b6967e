#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dtrace/graph.hpp"
#include "dtrace/trace.hpp"

namespace dtrace {

/// Per-edge direction constraint for the oracle.
enum class EdgeRule : unsigned char {
  Free,          // any two traversals
  Parallel,      // same direction twice
  Antiparallel,  // once each way
  Forward,       // twice from Link::u to Link::v (an arc)
};

enum class Stability { None, Strong, DStable };
enum class SearchMode { Exists, Count, EnumerateAll };

struct TraceQuery {
  Multigraph host;
  std::vector<EdgeRule> rules;  // empty: all Free
  Stability stability = Stability::None;
  int d = 0;
  SearchMode mode = SearchMode::Exists;
  /// Fix the first step to edge 0 (forward, plus backward where the rule
  /// allows it and the query is not reversal symmetric). Off for raw counts.
  bool fix_start = true;

  static TraceQuery restricted(const Multigraph& host, const RestrictionSet& r, Stability s = Stability::Strong,
                               int d = 0);
  static TraceQuery mixed(const MixedGraph& b, const RestrictionSet& r, Stability s = Stability::Strong, int d = 0);
  static TraceQuery uniform(const Multigraph& host, EdgeRule rule, Stability s = Stability::Strong, int d = 0);
};

struct OracleLimits {
  int max_edges_exists = 10;
  int max_edges_enumerate = 9;
};

struct OracleResult {
  bool exists = false;
  std::uint64_t count = 0;  // Count / EnumerateAll
  std::vector<Walk> traces; // EnumerateAll (sorted), or the witness trace for Exists
};

/// Serial reference search.
OracleResult oracle_search(const TraceQuery& q, const OracleLimits& limits = {});
/// Same answers as oracle_search, split across first-branch prefixes with
/// OpenMP. `threads` <= 0 uses the OpenMP default.
OracleResult oracle_search_parallel(const TraceQuery& q, const OracleLimits& limits = {}, int threads = 0);

/// Lexicographic minimum, compared as (from, to) vertex pairs, over all
/// rotations, the reversal, and the given vertex automorphisms. Edge ids of
/// the result are those of the host. Throws InputError for an invalid trace.
Walk canonical_form(const Graph& g, std::span<const Step> w, std::span<const std::vector<VertexId>> auts);

/// Every distinct image of w under rotation, reversal and `auts`.
std::vector<Walk> orbit(const Graph& g, std::span<const Step> w, std::span<const std::vector<VertexId>> auts);

struct EquivalenceClass {
  Walk representative;  // canonical form
  std::size_t size = 0; // number of raw step sequences in the class
  // Symmetry mapping the first enumerated member onto the representative.
  std::size_t shift = 0;
  bool reversed = false;
  std::size_t automorphism = 0;
};

/// Automorphisms of g that map the edge set `e` onto itself.
std::vector<std::vector<VertexId>> stabilizer(const Graph& g, std::span<const EdgeId> e);

/// Classes of traces satisfying q (q.host must be simple; no Forward rules),
/// sorted by representative. `auts` should preserve the rules.
std::vector<EquivalenceClass> enumerate_classes(const Graph& g, const TraceQuery& q,
                                                std::span<const std::vector<VertexId>> auts,
                                                const OracleLimits& limits = {}, int threads = 1);

struct RestrictedClasses {
  EdgeSet antiparallel;
  std::vector<EquivalenceClass> classes;
};

/// Every E with |E| = p, E-restricted strong (or d-stable
/// when d > 0) traces up to equivalence; subsets in lexicographic order.
std::vector<RestrictedClasses> enumerate_restricted_classes(const Graph& g, int p, int d = 0,
                                                            const OracleLimits& limits = {}, int threads = 1);

}  // namespace dtrace
