#pragma once

// Backtracking state shared by the serial and OpenMP drivers.

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <vector>

#include "dtrace/enumeration.hpp"

namespace dtrace::detail {

class Searcher {
 public:
  explicit Searcher(const TraceQuery& q);

  std::size_t length() const { return len_; }
  /// Candidate steps at the current depth, in search order.
  std::vector<Step> candidates() const;
  /// Checks every constraint the step can violate now; applies it on success.
  bool place(const Step& s);
  void undo();
  std::size_t depth() const { return depth_; }
  const Walk& steps() const { return steps_; }

  /// Depth-first search below the current state. `visit` is called with
  /// every complete trace and returns false to stop. With `bound` set the
  /// search also stops once *bound < index. Returns false when stopped early.
  bool dfs(const std::function<bool(const Walk&)>& visit, const std::atomic<std::size_t>* bound = nullptr,
           std::size_t index = 0);
  /// Every state reachable at `depth` steps, as step prefixes, in DFS order.
  std::vector<Walk> prefixes(std::size_t depth);

 private:
  struct Undo {
    EdgeId edge;
    int out_from, in_to, out_to, in_from;  // dart increments applied
    int link_a, link_b;                    // -1 if none
    int close_a, close_b;
  };

  bool link(int a, int b, VertexId at);
  void unlink(int a, int b);
  int leave_key(const Step& s) const;
  int enter_key(const Step& s) const;
  bool rule_allows(const Step& s) const;

  const TraceQuery& q_;
  const Multigraph& g_;
  std::size_t len_;
  std::vector<EdgeRule> rules_;
  bool backward_start_ = false;
  std::vector<int> uses_;
  std::vector<bool> first_fwd_;
  std::vector<int> in_, out_;
  std::vector<std::array<int, 2>> nb_;
  std::vector<int> nb_count_;
  Walk steps_;
  std::vector<Undo> undo_;
  std::size_t depth_ = 0;
};

/// Throws CapacityError / InputError; returns false when the query is
/// trivially unsatisfiable (and fills `out` for the edgeless host).
bool prepare(const TraceQuery& q, const OracleLimits& limits, OracleResult& out);

}  // namespace dtrace::detail
