#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dtrace/feasibility.hpp"
#include "dtrace/graph.hpp"
#include "dtrace/trace.hpp"

namespace dtrace {

enum class GraphKind { Simple, Multi, Mixed };

/// Parsed graph file. Edge and arc lines share one index space in file order.
struct GraphDocument {
  GraphKind kind = GraphKind::Simple;
  int vertex_count = 0;
  std::vector<MixedLink> links;
  std::optional<RestrictionSet> restriction;

  Graph simple() const;        // InputError unless kind == Simple
  Multigraph multi() const;    // any kind; arcs keep their tail as u
  MixedGraph mixed() const;    // Simple or Mixed
  RestrictionSet restriction_or_empty() const { return restriction.value_or(RestrictionSet{}); }
};

/// Format: `n <V> [simple|multi|mixed]`, then `e u v` / `a u v` lines and an
/// optional `E i1 i2 ...` line. `#` starts a comment. Errors carry the line
/// number.
GraphDocument parse_graph(std::string_view text);
std::string render_graph(const GraphDocument& doc);

GraphDocument document_of(const Graph& g, std::optional<RestrictionSet> r = std::nullopt);
GraphDocument document_of(const Multigraph& g);
GraphDocument document_of(const MixedGraph& b, std::optional<RestrictionSet> r = std::nullopt);

/// JSON trace (`{"steps": [{"edge","from","to"}, ...]}`, extra keys ignored)
/// or plain lines `edge from to`.
Walk parse_trace(std::string_view text);
/// Steps, per-edge direction labels, strong flag and repetition count.
std::string trace_json(const Multigraph& g, std::span<const Step> w, int indent = 2);
std::string certificate_json(const SpanningTreeCertificate& c, int indent = 2);
/// Digraph with one arc per traversal, labelled with edge id and position.
std::string trace_dot(const Multigraph& g, std::span<const Step> w);

std::string read_file(const std::string& path);

}  // namespace dtrace
