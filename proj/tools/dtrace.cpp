// dtrace: feasibility checks, constructions, enumeration and classification
// of double traces from the command line. JSON on stdout, diagnostics on
// stderr. Exit codes: 0 true/valid, 1 false/invalid, 2 error, 3 capacity.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "dtrace/construction.hpp"
#include "dtrace/enumeration.hpp"
#include "dtrace/errors.hpp"
#include "dtrace/feasibility.hpp"
#include "dtrace/io.hpp"

using namespace dtrace;
using nlohmann::json;

namespace {

struct Options {
  std::string file;
  std::string trace_file;
  std::string variant;
  int d = 0;
  int p = -1;
  bool classes = true;
  bool raw = false;
  std::string format = "json";
  int jobs = 1;
};

std::string default_variant(const GraphDocument& doc, const Options& o) {
  if (!o.variant.empty()) return o.variant;
  if (doc.kind == GraphKind::Mixed || doc.restriction) return o.d > 0 ? "dstable" : "restricted";
  return o.d > 0 ? "dstable" : "strong";
}

FeasibilityAnswer answer(const GraphDocument& doc, const std::string& variant, int d) {
  const RestrictionSet r = doc.restriction_or_empty();
  if (doc.kind == GraphKind::Mixed) {
    if (variant == "restricted") return has_E_restricted_strong_trace_mixed(doc.mixed(), r);
    if (variant == "dstable") return has_E_restricted_d_stable_trace_mixed(doc.mixed(), r, d);
    throw InputError("mixed graphs support the 'restricted' and 'dstable' variants only");
  }
  const Graph g = doc.simple();
  if (variant == "strong") return has_strong_trace(g);
  if (variant == "dstable") return doc.restriction ? has_E_restricted_d_stable_trace(g, r, d) : has_d_stable_trace(g, d);
  if (variant == "parallel") return d > 0 ? has_parallel_d_stable_trace(g, d) : has_parallel_strong_trace(g);
  if (variant == "antiparallel") return d > 0 ? has_antiparallel_d_stable_trace(g, d) : has_antiparallel_strong_trace(g);
  if (variant == "restricted") return d > 0 ? has_E_restricted_d_stable_trace(g, r, d) : has_E_restricted_strong_trace(g, r);
  if (variant == "double") return has_E_restricted_double_trace(g, r);
  throw InputError("unknown variant '" + variant + "'");
}

DoubleTrace build(const GraphDocument& doc, const std::string& variant, int d) {
  const RestrictionSet r = doc.restriction_or_empty();
  if (doc.kind == GraphKind::Mixed) {
    if (variant == "restricted") return build_mixed_trace(doc.mixed(), r, d > 0 ? std::optional<int>(d) : std::nullopt);
    if (variant == "dstable") return build_mixed_trace(doc.mixed(), r, d);
    throw InputError("mixed graphs support the 'restricted' and 'dstable' variants only");
  }
  const Graph g = doc.simple();
  if (variant == "strong") return strong_trace(g);
  if (variant == "dstable") return doc.restriction ? build_E_restricted_d_stable_trace(g, r, d) : build_d_stable_trace(g, d);
  if (variant == "parallel") return d > 0 ? build_parallel_d_stable_trace(g, d) : parallel_strong_trace(g);
  if (variant == "antiparallel") return d > 0 ? build_antiparallel_d_stable_trace(g, d) : build_antiparallel_strong_trace(g);
  if (variant == "restricted") return d > 0 ? build_E_restricted_d_stable_trace(g, r, d) : build_E_restricted_strong_trace(g, r);
  if (variant == "double") return build_E_restricted_double_trace(g, r);
  throw InputError("unknown variant '" + variant + "'");
}

TraceQuery query_for(const GraphDocument& doc, const std::string& variant, int d) {
  const RestrictionSet r = doc.restriction_or_empty();
  const Stability s = d > 0 ? Stability::DStable : Stability::Strong;
  if (doc.kind == GraphKind::Mixed) return TraceQuery::mixed(doc.mixed(), r, s, d);
  const Multigraph h = doc.multi();
  if (variant == "strong" || (variant == "dstable" && !doc.restriction)) return TraceQuery::uniform(h, EdgeRule::Free, s, d);
  if (variant == "parallel") return TraceQuery::uniform(h, EdgeRule::Parallel, s, d);
  if (variant == "antiparallel") return TraceQuery::uniform(h, EdgeRule::Antiparallel, s, d);
  if (variant == "restricted" || variant == "dstable") return TraceQuery::restricted(h, r, s, d);
  if (variant == "double") return TraceQuery::restricted(h, r, Stability::None, 0);
  throw InputError("unknown variant '" + variant + "'");
}

json answer_json(const FeasibilityAnswer& a) {
  json j{{"verdict", a.verdict}, {"satisfied", a.satisfied}, {"violated", a.violated}};
  if (a.tree) j["certificate"] = json::parse(certificate_json(*a.tree));
  if (a.quotient) {
    const QuotientCertificate& q = *a.quotient;
    json edges = json::array();
    for (const Link& l : q.simplified.graph.edges()) edges.push_back({l.u, l.v});
    j["quotient"] = {{"parallel_edges", q.parallel_edges},
                     {"vertex_image", q.contraction.vertex_image},
                     {"contracted_witnesses_only", q.contracted_witnesses_only},
                     {"simplified_vertex_count", q.simplified.graph.vertex_count()},
                     {"simplified_edges", edges},
                     {"certificate", json::parse(certificate_json(q.tree))}};
  }
  return j;
}

int cmd_check(const Options& o) {
  const GraphDocument doc = parse_graph(read_file(o.file));
  const std::string variant = default_variant(doc, o);
  json j = answer_json(answer(doc, variant, o.d));
  j["command"] = "check";
  j["variant"] = variant;
  if (o.d > 0) j["d"] = o.d;
  std::cout << j.dump(2) << '\n';
  return j["verdict"].get<bool>() ? 0 : 1;
}

int cmd_construct(const Options& o) {
  const GraphDocument doc = parse_graph(read_file(o.file));
  const std::string variant = default_variant(doc, o);
  const FeasibilityAnswer a = answer(doc, variant, o.d);
  if (!a.verdict) {
    json j = answer_json(a);
    j["command"] = "construct";
    j["variant"] = variant;
    std::cout << j.dump(2) << '\n';
    return 1;
  }
  const DoubleTrace t = build(doc, variant, o.d);
  const Multigraph h = doc.multi();
  if (o.format == "dot") {
    std::cout << trace_dot(h, t.steps);
    return 0;
  }
  json j = json::parse(trace_json(h, t.steps));
  j["command"] = "construct";
  j["variant"] = variant;
  if (o.d > 0) {
    j["d"] = o.d;
    j["d_stable"] = is_d_stable(h, t.steps, o.d);
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

json classes_json(const std::vector<EquivalenceClass>& cs) {
  json arr = json::array();
  for (const EquivalenceClass& c : cs) {
    json steps = json::array();
    for (const Step& s : c.representative) steps.push_back({{"edge", s.edge}, {"from", s.from}, {"to", s.to}});
    arr.push_back({{"representative", steps}, {"size", c.size}});
  }
  return arr;
}

int cmd_enumerate(const Options& o) {
  const GraphDocument doc = parse_graph(read_file(o.file));
  if (doc.kind != GraphKind::Simple) throw InputError("enumeration needs a simple graph");
  const Graph g = doc.simple();
  json j{{"command", "enumerate"}};
  if (o.p >= 0) {
    j["p"] = o.p;
    if (o.d > 0) j["d"] = o.d;
    json per = json::array();
    std::size_t total = 0;
    for (const RestrictedClasses& rc : enumerate_restricted_classes(g, o.p, o.d, {}, o.jobs)) {
      per.push_back({{"E", rc.antiparallel}, {"class_count", rc.classes.size()}, {"classes", classes_json(rc.classes)}});
      total += rc.classes.size();
    }
    j["restrictions"] = per;
    j["class_count"] = total;
  } else {
    const std::string variant = default_variant(doc, o);
    const TraceQuery q = query_for(doc, variant, o.d);
    const auto auts = doc.restriction ? stabilizer(g, doc.restriction->antiparallel) : automorphisms(g);
    const auto cs = enumerate_classes(g, q, auts, {}, o.jobs);
    j["variant"] = variant;
    if (o.d > 0) j["d"] = o.d;
    j["class_count"] = cs.size();
    j["classes"] = classes_json(cs);
    if (o.raw) {
      TraceQuery raw = q;
      raw.mode = SearchMode::Count;
      raw.fix_start = false;
      j["raw_count"] = oracle_search_parallel(raw, {}, o.jobs).count;
    }
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_classify(const Options& o) {
  const Walk w = parse_trace(read_file(o.trace_file));
  const GraphDocument doc = parse_graph(read_file(o.file));
  const Multigraph h = doc.multi();
  if (o.format == "dot") {
    std::cout << trace_dot(h, w);
    return validate_double_trace(h, w).ok ? 0 : 1;
  }
  json j = json::parse(trace_json(h, w));
  j["command"] = "classify";
  if (!j["valid"].get<bool>()) {
    std::cout << j.dump(2) << '\n';
    return 1;
  }
  const TransitionSystem ts(h, w);
  json reps = json::array();
  for (VertexId v = 0; v < h.vertex_count(); ++v) {
    json comps = json::array();
    for (const TransitionComponent& c : ts.at(v)) comps.push_back({{"neighbors", c.neighbors}, {"size", c.size()}});
    reps.push_back({{"vertex", v}, {"components", comps}, {"smallest", ts.smallest_repetition(v)}});
  }
  j["repetitions"] = reps;
  // Largest d for which the trace is d-stable.
  int dmax = 0;
  while (dmax < h.edge_count() * 2 && is_d_stable(h, w, dmax + 1)) ++dmax;
  j["max_stable_d"] = dmax;
  if (doc.restriction) j["matches_restriction"] = check_restriction(h, w, *doc.restriction);
  if (doc.kind == GraphKind::Mixed) j["respects_arcs"] = respects_arcs(h, w, doc.mixed().arcs());
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double traces of graphs: feasibility, construction, enumeration"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--variant", o.variant, "strong|dstable|parallel|antiparallel|restricted|double")
        ->check(CLI::IsMember({"strong", "dstable", "parallel", "antiparallel", "restricted", "double"}));
    sub->add_option("--d", o.d, "stability order")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", o.jobs, "worker threads for exhaustive search")->envname("DTRACE_JOBS")->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "decide whether the requested trace exists");
  check->add_option("file", o.file)->required();
  add_common(check);

  auto* construct = app.add_subcommand("construct", "build a trace");
  construct->add_option("file", o.file)->required();
  construct->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot"}));
  add_common(construct);

  auto* enumerate = app.add_subcommand("enumerate", "traces up to rotation, reversal and automorphism");
  enumerate->add_option("file", o.file)->required();
  enumerate->add_option("--p", o.p, "every restriction set of this size")->check(CLI::NonNegativeNumber);
  enumerate->add_flag("--classes", o.classes, "report equivalence classes (default)");
  enumerate->add_flag("--raw", o.raw, "also count raw step sequences");
  add_common(enumerate);

  auto* classify = app.add_subcommand("classify", "validate a trace and report directions and repetitions");
  classify->add_option("trace", o.trace_file)->required();
  classify->add_option("file", o.file)->required();
  classify->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (o.variant == "dstable" && o.d <= 0) throw InputError("variant 'dstable' needs --d");
    if (*check) return cmd_check(o);
    if (*construct) return cmd_construct(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*classify) return cmd_classify(o);
  } catch (const CapacityError& e) {
    std::cout << json{{"status", "unknown (capacity)"}, {"message", e.what()}}.dump(2) << '\n';
    std::cerr << "capacity: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cout << json{{"status", "error"}, {"message", e.what()}}.dump(2) << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cout << json{{"status", "error"}, {"message", e.what()}}.dump(2) << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
