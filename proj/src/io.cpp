#include "dtrace/io.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "dtrace/errors.hpp"

namespace dtrace {

namespace {

using nlohmann::json;

[[noreturn]] void fail(int line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

int parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) fail(line, "expected an integer, got '" + tok + "'");
  return v;
}

json steps_json(std::span<const Step> w) {
  json arr = json::array();
  for (const Step& s : w) arr.push_back({{"edge", s.edge}, {"from", s.from}, {"to", s.to}});
  return arr;
}

json component_json(const Component& c) {
  return {{"vertices", c.vertices}, {"edges", c.edges}, {"odd", c.odd}, {"has_witness", c.has_witness}};
}

}  // namespace

Graph GraphDocument::simple() const {
  if (kind != GraphKind::Simple) throw InputError("this operation needs a simple graph");
  std::vector<Link> links_out;
  for (const MixedLink& l : links) links_out.push_back({l.u, l.v});
  return Graph(vertex_count, std::move(links_out));
}

Multigraph GraphDocument::multi() const {
  std::vector<Link> links_out;
  for (const MixedLink& l : links) links_out.push_back({l.u, l.v});
  return Multigraph(vertex_count, std::move(links_out));
}

MixedGraph GraphDocument::mixed() const {
  if (kind == GraphKind::Multi) throw InputError("this operation needs a simple or mixed graph");
  return MixedGraph(vertex_count, links);
}

GraphDocument parse_graph(std::string_view text) {
  GraphDocument doc;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool header = false;
  std::vector<std::pair<int, EdgeSet>> restriction_lines;
  std::set<std::pair<int, int>> simple_pairs;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!header) {
      if (tok[0] != "n" || tok.size() < 2 || tok.size() > 3) fail(line, "expected header 'n <V> [simple|multi|mixed]'");
      doc.vertex_count = parse_int(tok[1], line);
      if (doc.vertex_count < 0) fail(line, "vertex count must be non-negative");
      if (tok.size() == 3) {
        if (tok[2] == "simple") doc.kind = GraphKind::Simple;
        else if (tok[2] == "multi") doc.kind = GraphKind::Multi;
        else if (tok[2] == "mixed") doc.kind = GraphKind::Mixed;
        else fail(line, "unknown graph flag '" + tok[2] + "'");
      }
      header = true;
      continue;
    }
    if (tok[0] == "e" || tok[0] == "a") {
      if (tok.size() != 3) fail(line, "expected '" + tok[0] + " <u> <v>'");
      const int u = parse_int(tok[1], line), v = parse_int(tok[2], line);
      if (u < 0 || u >= doc.vertex_count || v < 0 || v >= doc.vertex_count)
        fail(line, "vertex index out of range 0.." + std::to_string(doc.vertex_count - 1));
      if (tok[0] == "a" && doc.kind != GraphKind::Mixed) fail(line, "arc line needs the 'mixed' header flag");
      if (u == v && doc.kind != GraphKind::Multi) fail(line, "loop needs the 'multi' header flag");
      if (doc.kind == GraphKind::Simple && !simple_pairs.insert(std::minmax(u, v)).second)
        fail(line, "repeated edge " + std::to_string(u) + "-" + std::to_string(v) + " in a simple graph");
      doc.links.push_back({u, v, tok[0] == "a"});
    } else if (tok[0] == "E") {
      if (doc.restriction) fail(line, "second restriction line");
      EdgeSet e;
      for (std::size_t i = 1; i < tok.size(); ++i) e.push_back(parse_int(tok[i], line));
      restriction_lines.emplace_back(line, e);
      doc.restriction = RestrictionSet{std::move(e)};
    } else {
      fail(line, "unknown line kind '" + tok[0] + "'");
    }
  }
  if (!header) throw InputError("missing header line 'n <V>'");
  for (const auto& [l, e] : restriction_lines) {
    std::vector<bool> seen(doc.links.size(), false);
    for (EdgeId x : e) {
      if (x < 0 || x >= static_cast<int>(doc.links.size())) fail(l, "restriction edge index " + std::to_string(x) + " out of range");
      if (seen[x]) fail(l, "restriction edge index " + std::to_string(x) + " repeated");
      seen[x] = true;
    }
  }
  // Structural validation of the resulting graph type.
  try {
    if (doc.kind == GraphKind::Simple) (void)doc.simple();
    else if (doc.kind == GraphKind::Mixed) (void)doc.mixed();
  } catch (const InputError& e) {
    throw InputError(std::string("graph: ") + e.what());
  }
  return doc;
}

std::string render_graph(const GraphDocument& doc) {
  std::ostringstream os;
  os << "n " << doc.vertex_count;
  if (doc.kind == GraphKind::Multi) os << " multi";
  if (doc.kind == GraphKind::Mixed) os << " mixed";
  os << '\n';
  for (const MixedLink& l : doc.links) os << (l.arc ? "a " : "e ") << l.u << ' ' << l.v << '\n';
  if (doc.restriction) {
    os << 'E';
    for (EdgeId e : doc.restriction->antiparallel) os << ' ' << e;
    os << '\n';
  }
  return os.str();
}

GraphDocument document_of(const Graph& g, std::optional<RestrictionSet> r) {
  GraphDocument doc;
  doc.vertex_count = g.vertex_count();
  for (const Link& l : g.edges()) doc.links.push_back({l.u, l.v, false});
  doc.restriction = std::move(r);
  return doc;
}

GraphDocument document_of(const Multigraph& g) {
  GraphDocument doc;
  doc.kind = GraphKind::Multi;
  doc.vertex_count = g.vertex_count();
  for (const Link& l : g.edges()) doc.links.push_back({l.u, l.v, false});
  return doc;
}

GraphDocument document_of(const MixedGraph& b, std::optional<RestrictionSet> r) {
  GraphDocument doc;
  doc.kind = GraphKind::Mixed;
  doc.vertex_count = b.vertex_count();
  doc.links.assign(b.links().begin(), b.links().end());
  doc.restriction = std::move(r);
  return doc;
}

Walk parse_trace(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  Walk w;
  if (first != std::string_view::npos && (text[first] == '{' || text[first] == '[')) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw InputError(std::string("trace JSON: ") + e.what());
    }
    const json& steps = j.is_array() ? j : j.value("steps", json::array());
    try {
      for (const json& s : steps) w.push_back(Step{s.at("edge").get<int>(), s.at("from").get<int>(), s.at("to").get<int>()});
    } catch (const json::exception& e) {
      throw InputError(std::string("trace JSON step: ") + e.what());
    }
    return w;
  }
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 3) fail(line, "expected '<edge> <from> <to>'");
    w.push_back(Step{parse_int(tok[0], line), parse_int(tok[1], line), parse_int(tok[2], line)});
  }
  return w;
}

std::string trace_json(const Multigraph& g, std::span<const Step> w, int indent) {
  json j;
  j["length"] = w.size();
  j["steps"] = steps_json(w);
  const ValidationReport rep = validate_double_trace(g, w);
  j["valid"] = rep.ok;
  if (rep.ok) {
    json dirs = json::array();
    const auto d = classify_directions(g, w);
    for (std::size_t e = 0; e < d.size(); ++e)
      dirs.push_back({{"edge", e}, {"direction", d[e] == Direction::Parallel ? "parallel" : "antiparallel"}});
    j["directions"] = dirs;
    j["strong"] = is_strong(g, w);
    j["nontrivial_repetitions"] = TransitionSystem(g, w).nontrivial_count();
  } else {
    j["problems"] = rep.problems;
  }
  return j.dump(indent);
}

std::string certificate_json(const SpanningTreeCertificate& c, int indent) {
  json comps = json::array();
  for (const Component& x : c.co_tree.components) comps.push_back(component_json(x));
  json j{{"tree_edges", c.tree_edges}, {"co_tree", comps}, {"deficiency", c.deficiency}};
  return j.dump(indent);
}

std::string trace_dot(const Multigraph& g, std::span<const Step> w) {
  std::ostringstream os;
  os << "digraph trace {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) os << "  " << v << ";\n";
  std::vector<Direction> dirs;
  if (validate_double_trace(g, w).ok) dirs = classify_directions(g, w);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Step& s = w[i];
    os << "  " << s.from << " -> " << s.to << " [label=\"e" << s.edge << " #" << i << "\"";
    if (!dirs.empty()) os << ", color=" << (dirs[s.edge] == Direction::Parallel ? "blue" : "red");
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace dtrace
