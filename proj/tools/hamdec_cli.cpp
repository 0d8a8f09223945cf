#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "hamdec/classic.hpp"
#include "hamdec/serialize.hpp"

using namespace hamdec;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::MalformedInput, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::MalformedInput, "cannot write " + path);
  out << text;
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("HAMDEC_SEED");
  if (!raw || !*raw) return std::nullopt;
  try {
    return std::stoull(raw);
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidParameter, "HAMDEC_SEED must be an unsigned integer");
  }
}

// Small structural checks that need no instance file.
int selftest() {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    failures += !ok;
  };
  bool walecki_ok = true;
  for (int K = 3; K <= 21; K += 2) {
    Multigraph all(K);
    for (const auto& c : walecki_decompose(K)) {
      const auto& o = c.order();
      for (int t = 0; t < K; ++t) all.add_edge(o[t], o[(t + 1) % K]);
    }
    for (int x = 0; x < K; ++x) {
      for (int y = x + 1; y < K; ++y) walecki_ok = walecki_ok && all.multiplicity(x, y) == 1;
    }
  }
  report("walecki decomposition K=3..21", walecki_ok);
  bool bip_ok = true;
  for (int K = 2; K <= 20; K += 2) {
    Multigraph all(2 * K);
    for (const auto& c : bipartite_hamilton_decompose(K)) {
      const auto& o = c.order();
      for (int t = 0; t < 2 * K; ++t) all.add_edge(o[t], o[(t + 1) % (2 * K)]);
    }
    for (int a = 0; a < K; ++a) {
      for (int b = K; b < 2 * K; ++b) bip_ok = bip_ok && all.multiplicity(a, b) == 1;
    }
    bip_ok = bip_ok && all.edge_count() == 1LL * K * K;
  }
  report("bipartite decomposition K=2..20", bip_ok);
  for (auto mode : {PartitionMode::TwoCliques, PartitionMode::Bipartite}) {
    auto config = default_config(mode);
    if (mode == PartitionMode::TwoCliques) {
      config.K = 3;
      config.m = 30;
      config.systems = 9;
      config.hes = 3;
    } else {
      config.systems = 4;
    }
    const auto instance = generate_instance(config);
    const auto hypotheses = check_hypotheses(instance.graph, instance.partition, instance.systems, config);
    report(std::string(to_string(mode)) + " generated hypotheses", hypotheses.empty());
    const auto cert = decompose(instance.graph, instance.partition, instance.systems, params_for(config));
    report(std::string(to_string(mode)) + " end-to-end verdicts", cert.verdicts && cert.verdicts->ok);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate Hamilton decompositions of near-complete graphs"};
  app.require_subcommand(1);

  std::string mode = "two-cliques";
  std::optional<int> K, m;
  std::optional<std::uint64_t> seed;
  std::string params_file, output, instance_file, certificate_file;
  int jobs = 1;
  bool trim = false;
  int slot = -1;

  auto* gen = app.add_subcommand("gen", "emit a generated instance as JSON");
  gen->add_option("--mode", mode, "two-cliques or bipartite")->check(CLI::IsMember({"two-cliques", "bipartite"}));
  gen->add_option("--K", K, "clusters per side");
  gen->add_option("--m", m, "cluster size");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--params", params_file, "JSON file with config overrides");
  gen->add_option("-o,--output", output, "output file (default stdout)");

  auto* dec = app.add_subcommand("decompose", "instance JSON to certificate JSON");
  dec->add_option("instance", instance_file)->required();
  dec->add_option("--seed", seed, "pipeline seed (default: the instance's)");
  dec->add_option("--params", params_file, "JSON file with pipeline overrides");
  dec->add_option("--jobs", jobs, "slices run in parallel")->check(CLI::PositiveNumber);
  dec->add_flag("--trim", trim, "drop cross edges no system uses");
  dec->add_option("-o,--output", output, "output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "check a certificate against its instance");
  ver->add_option("instance", instance_file)->required();
  ver->add_option("certificate", certificate_file)->required();
  ver->add_flag("--trim", trim, "verify against the trimmed graph");
  ver->add_option("-o,--output", output, "report file (default stdout)");

  auto* self = app.add_subcommand("selftest", "run built-in invariant suites");

  auto* dot = app.add_subcommand("export-dot", "render an instance as Graphviz");
  dot->add_option("instance", instance_file)->required();
  dot->add_option("--certificate", certificate_file, "certificate whose slot to highlight");
  dot->add_option("--slot", slot, "slot index to highlight");
  dot->add_option("-o,--output", output, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (const auto from_env = env_seed()) seed = from_env;
    if (gen->parsed()) {
      auto config = default_config(partition_mode_from_string(mode));
      if (!params_file.empty()) config = config_from_json(read_file(params_file), config);
      if (K) config.K = *K;
      if (m) config.m = *m;
      if (seed) config.seed = *seed;
      write_output(output, instance_to_json(generate_instance(config)));
      return 0;
    }
    if (dec->parsed()) {
      const auto instance = instance_from_json(read_file(instance_file));
      auto params = params_for(instance.config);
      if (!params_file.empty()) params = params_from_json(read_file(params_file), params);
      if (seed) params.seed = *seed;
      params.jobs = jobs;
      params.trim = params.trim || trim;
      const auto cert = decompose(instance.graph, instance.partition, instance.systems, params);
      write_output(output, certificate_to_json(cert));
      return cert.verdicts && cert.verdicts->ok ? 0 : 1;
    }
    if (ver->parsed()) {
      const auto instance = instance_from_json(read_file(instance_file));
      const auto cert = certificate_from_json(read_file(certificate_file));
      const Multigraph g = trim ? trim_graph(instance.graph, instance.partition, instance.systems) : instance.graph;
      const auto report = verify_certificate(g, instance.partition, instance.systems, cert);
      write_output(output, report_to_json(report));
      return report.ok ? 0 : 1;
    }
    if (self->parsed()) return selftest();
    if (dot->parsed()) {
      const auto instance = instance_from_json(read_file(instance_file));
      std::optional<Certificate> cert;
      if (!certificate_file.empty()) cert = certificate_from_json(read_file(certificate_file));
      const CertificateSlot* chosen = nullptr;
      if (cert && slot >= 0) {
        if (slot >= static_cast<int>(cert->slots.size())) fail(ErrorKind::InvalidParameter, "slot out of range");
        chosen = &cert->slots[slot];
      }
      write_output(output, to_dot(instance, chosen));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
