#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hamdec {

using Vertex = int;

enum class ErrorKind {
  MalformedInput,
  InvalidParameter,
  DegreeHypothesisViolated,
  InvalidExceptionalSystem,
  NotConsistent,
  SpliceVerificationFailed,
  SamplingFailed,
  ReservoirExhausted,
  MatchingInfeasible,
  HamiltonSearchExhausted,
  AssemblyVerificationFailed,
};

std::string_view to_string(ErrorKind kind);

// Base exception. Stage frames are appended while the error travels up the
// pipeline so a failure can be replayed from (stage, slot, seed).
class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::vector<std::string>& trace() const noexcept { return trace_; }
  const char* what() const noexcept override { return rendered_.c_str(); }

  Error& add_stage(std::string_view stage, int slot = -1,
                   std::optional<std::uint64_t> seed = std::nullopt);

 private:
  void render();

  ErrorKind kind_;
  std::string detail_;
  std::vector<std::string> trace_;
  std::string rendered_;
};

// Witness for a failed regular-subgraph flow: S1 on the left, S2 on the
// right, with e(S1, V \ S2) < target * (|S1| - |S2|).
struct CutWitness {
  std::vector<Vertex> left;
  std::vector<Vertex> right;
  int target = 0;
  long long crossing = 0;
};

class CutViolation : public Error {
 public:
  CutViolation(std::string detail, CutWitness witness)
      : Error(ErrorKind::DegreeHypothesisViolated, std::move(detail)),
        witness_(std::move(witness)) {}
  const CutWitness& witness() const noexcept { return witness_; }

 private:
  CutWitness witness_;
};

// Hall violator: |N(deficient)| < |deficient|.
struct HallWitness {
  std::vector<Vertex> deficient;
  std::vector<Vertex> neighbourhood;
};

class HallViolation : public Error {
 public:
  HallViolation(std::string detail, HallWitness witness)
      : Error(ErrorKind::MatchingInfeasible, std::move(detail)),
        witness_(std::move(witness)) {}
  const HallWitness& witness() const noexcept { return witness_; }

 private:
  HallWitness witness_;
};

[[noreturn]] void fail(ErrorKind kind, std::string detail);

}  // namespace hamdec
