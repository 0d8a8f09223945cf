#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamdec/exceptional.hpp"
#include "hamdec/graph.hpp"

namespace hamdec {

struct CertificateSlot {
  int system = 0;  // index into the instance's system list
  SystemKind kind = SystemKind::MES;
  int slice = 0;
  std::vector<Edge> edges;  // sorted
  bool operator==(const CertificateSlot&) const = default;
};

struct SlotVerdict {
  int system = 0;
  bool contains_system = false;
  bool inside_graph = false;
  bool structure_ok = false;  // Hamilton cycle, or two perfect matchings for MES
  bool operator==(const SlotVerdict&) const = default;
};

struct VerificationReport {
  bool ok = false;
  bool disjoint = false;
  double coverage = 0.0;
  std::vector<SlotVerdict> slots;
  std::vector<std::string> failures;
  bool operator==(const VerificationReport&) const = default;
};

struct Certificate {
  int schema = 1;
  PartitionMode mode = PartitionMode::TwoCliques;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
  std::map<std::string, double> derived;
  std::vector<CertificateSlot> slots;
  std::optional<VerificationReport> verdicts;
  bool operator==(const Certificate&) const = default;
};

// Recomputes every verdict from the raw edge lists. Never throws on bad
// certificates; every failed check is listed in the report.
VerificationReport verify_certificate(const Multigraph& g, const ClusterPartition& p,
                                      std::span<const ExceptionalSystem> systems,
                                      const Certificate& certificate);

}  // namespace hamdec
