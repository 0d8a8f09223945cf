#include <json.hpp>
#include <set>
#include <sstream>

#include "hamdec/serialize.hpp"

namespace hamdec {

using nlohmann::json;

namespace {

constexpr int kSchema = 1;

template <class Fn>
auto parsing(std::string_view what, Fn fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    fail(ErrorKind::MalformedInput, std::string(what) + ": " + e.what());
  }
}

json parse_document(std::string_view text, std::string_view what) {
  json doc = parsing(what, [&] { return json::parse(text); });
  if (!doc.is_object()) fail(ErrorKind::MalformedInput, std::string(what) + " must be a JSON object");
  if (doc.value("schema", 0) != kSchema) {
    fail(ErrorKind::MalformedInput, std::string(what) + " has an unsupported schema version");
  }
  return doc;
}

json config_json(const InstanceConfig& c) {
  return {{"mode", std::string(to_string(c.mode))},
          {"K", c.K},
          {"m", c.m},
          {"a0", c.a0},
          {"b0", c.b0},
          {"eps0", c.eps0},
          {"mu", c.mu},
          {"rho", c.rho},
          {"gamma", c.gamma},
          {"systems", c.systems},
          {"hes", c.hes},
          {"seed", c.seed}};
}

void apply_config(const json& j, InstanceConfig& c) {
  for (const auto& [key, value] : j.items()) {
    if (key == "mode") c.mode = partition_mode_from_string(value.get<std::string>());
    else if (key == "K") c.K = value.get<int>();
    else if (key == "m") c.m = value.get<int>();
    else if (key == "a0") c.a0 = value.get<int>();
    else if (key == "b0") c.b0 = value.get<int>();
    else if (key == "eps0") c.eps0 = value.get<double>();
    else if (key == "mu") c.mu = value.get<double>();
    else if (key == "rho") c.rho = value.get<double>();
    else if (key == "gamma") c.gamma = value.get<double>();
    else if (key == "systems") c.systems = value.get<int>();
    else if (key == "hes") c.hes = value.get<int>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else fail(ErrorKind::MalformedInput, "unknown config key '" + key + "'");
  }
}

json edges_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

std::vector<Edge> edges_from(const json& j) {
  std::vector<Edge> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) fail(ErrorKind::MalformedInput, "edge must be a pair");
    out.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
  }
  return out;
}

json report_json(const VerificationReport& r) {
  json slots = json::array();
  for (const auto& s : r.slots) {
    slots.push_back({{"system", s.system},
                     {"contains_system", s.contains_system},
                     {"inside_graph", s.inside_graph},
                     {"structure_ok", s.structure_ok}});
  }
  return {{"ok", r.ok}, {"disjoint", r.disjoint}, {"coverage", r.coverage},
          {"slots", slots}, {"failures", r.failures}};
}

VerificationReport report_from(const json& j) {
  VerificationReport r;
  r.ok = j.at("ok").get<bool>();
  r.disjoint = j.at("disjoint").get<bool>();
  r.coverage = j.at("coverage").get<double>();
  r.failures = j.at("failures").get<std::vector<std::string>>();
  for (const auto& s : j.at("slots")) {
    r.slots.push_back({s.at("system").get<int>(), s.at("contains_system").get<bool>(),
                       s.at("inside_graph").get<bool>(), s.at("structure_ok").get<bool>()});
  }
  return r;
}

}  // namespace

PartitionMode partition_mode_from_string(std::string_view text) {
  if (text == "two-cliques") return PartitionMode::TwoCliques;
  if (text == "bipartite") return PartitionMode::Bipartite;
  fail(ErrorKind::MalformedInput, "mode must be two-cliques or bipartite, got '" + std::string(text) + "'");
}

std::string instance_to_json(const Instance& instance) {
  const auto& p = instance.partition;
  json systems = json::array();
  for (const auto& s : instance.systems) {
    systems.push_back({{"kind", std::string(to_string(s.kind))},
                       {"paths", s.paths},
                       {"locality", s.locality},
                       {"eps0", s.eps0}});
  }
  json doc = {{"schema", kSchema},
              {"config", config_json(instance.config)},
              {"n", p.vertex_count()},
              {"clusters", p.clusters()},
              {"a0", p.a0()},
              {"b0", p.b0()},
              {"edges", edges_json(instance.graph.edge_list())},
              {"systems", systems}};
  return doc.dump() + "\n";
}

Instance instance_from_json(std::string_view text) {
  const json doc = parse_document(text, "instance");
  return parsing("instance", [&] {
    Instance out;
    apply_config(doc.at("config"), out.config);
    const int n = doc.at("n").get<int>();
    if (n < 0) fail(ErrorKind::MalformedInput, "negative vertex count");
    out.partition = ClusterPartition(out.config.mode, n,
                                     doc.at("clusters").get<std::vector<std::vector<Vertex>>>(),
                                     doc.at("a0").get<std::vector<Vertex>>(),
                                     doc.at("b0").get<std::vector<Vertex>>());
    out.graph = Multigraph(n);
    for (const Edge& e : edges_from(doc.at("edges"))) out.graph.add_edge(e.u, e.v);
    for (const auto& s : doc.at("systems")) {
      ExceptionalSystem system;
      system.kind = system_kind_from_string(s.at("kind").get<std::string>());
      system.paths = s.at("paths").get<std::vector<std::vector<Vertex>>>();
      system.locality = s.at("locality").get<std::vector<int>>();
      system.eps0 = s.at("eps0").get<double>();
      out.systems.push_back(std::move(system));
    }
    return out;
  });
}

std::string certificate_to_json(const Certificate& c) {
  json slots = json::array();
  for (const auto& s : c.slots) {
    slots.push_back({{"system", s.system},
                     {"kind", std::string(to_string(s.kind))},
                     {"slice", s.slice},
                     {"edges", edges_json(s.edges)}});
  }
  json doc = {{"schema", c.schema},
              {"mode", std::string(to_string(c.mode))},
              {"seed", c.seed},
              {"params", c.params},
              {"derived", c.derived},
              {"slots", slots},
              {"verdicts", c.verdicts ? report_json(*c.verdicts) : json(nullptr)}};
  return doc.dump() + "\n";
}

Certificate certificate_from_json(std::string_view text) {
  const json doc = parse_document(text, "certificate");
  return parsing("certificate", [&] {
    Certificate c;
    c.schema = doc.at("schema").get<int>();
    c.mode = partition_mode_from_string(doc.at("mode").get<std::string>());
    c.seed = doc.at("seed").get<std::uint64_t>();
    c.params = doc.at("params").get<std::map<std::string, double>>();
    c.derived = doc.at("derived").get<std::map<std::string, double>>();
    for (const auto& s : doc.at("slots")) {
      c.slots.push_back({s.at("system").get<int>(), system_kind_from_string(s.at("kind").get<std::string>()),
                         s.at("slice").get<int>(), edges_from(s.at("edges"))});
    }
    if (doc.contains("verdicts") && !doc.at("verdicts").is_null()) c.verdicts = report_from(doc.at("verdicts"));
    return c;
  });
}

std::string report_to_json(const VerificationReport& report) {
  json doc = report_json(report);
  doc["schema"] = kSchema;
  return doc.dump(2) + "\n";
}

PipelineParams params_from_json(std::string_view text, PipelineParams base) {
  const json doc = parsing("params", [&] { return json::parse(text); });
  if (!doc.is_object()) fail(ErrorKind::MalformedInput, "params must be a JSON object");
  parsing("params", [&] {
    for (const auto& [key, value] : doc.items()) {
      if (key == "schema") continue;
      if (key == "mu") base.mu = value.get<double>();
      else if (key == "rho") base.rho = value.get<double>();
      else if (key == "eps0") base.eps0 = value.get<double>();
      else if (key == "gamma") base.gamma = value.get<double>();
      else if (key == "seed") base.seed = value.get<std::uint64_t>();
      else if (key == "jobs") base.jobs = value.get<int>();
      else if (key == "trim") base.trim = value.get<bool>();
      else if (key == "reserve_degree") base.reserve_degree = value.get<int>();
      else if (key == "restarts") base.budget.restarts = value.get<int>();
      else if (key == "steps_per_vertex") base.budget.steps_per_vertex = value.get<int>();
      else fail(ErrorKind::MalformedInput, "unknown params key '" + key + "'");
    }
    return 0;
  });
  return base;
}

InstanceConfig config_from_json(std::string_view text, InstanceConfig base) {
  json doc = parsing("config", [&] { return json::parse(text); });
  if (!doc.is_object()) fail(ErrorKind::MalformedInput, "config must be a JSON object");
  doc.erase("schema");
  parsing("config", [&] {
    apply_config(doc, base);
    return 0;
  });
  return base;
}

std::string to_dot(const Instance& instance, const CertificateSlot* slot) {
  const auto& p = instance.partition;
  std::ostringstream out;
  out << "graph instance {\n  node [shape=point];\n";
  for (int c = 0; c < p.cluster_count(); ++c) {
    const bool a_side = p.mode() == PartitionMode::Plain || c < p.side_cluster_count();
    out << "  subgraph cluster_" << c << " {\n    label=\"" << (a_side ? "A" : "B")
        << (p.mode() == PartitionMode::Plain ? c : c % p.side_cluster_count()) + 1 << "\";\n   ";
    for (Vertex v : p.cluster(c)) out << ' ' << v << ';';
    out << "\n  }\n";
  }
  for (Vertex v : p.exceptional()) out << "  " << v << " [shape=box, label=\"" << v << "\"];\n";
  std::set<Edge> bold;
  if (slot) bold.insert(slot->edges.begin(), slot->edges.end());
  for (const Edge& e : instance.graph.edge_list()) {
    out << "  " << e.u << " -- " << e.v;
    if (bold.count(e)) out << " [penwidth=3, color=red]";
    else if (slot) out << " [color=gray80]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace hamdec
