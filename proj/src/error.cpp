#include "hamdec/error.hpp"

namespace hamdec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DegreeHypothesisViolated: return "DegreeHypothesisViolated";
    case ErrorKind::InvalidExceptionalSystem: return "InvalidExceptionalSystem";
    case ErrorKind::NotConsistent: return "NotConsistent";
    case ErrorKind::SpliceVerificationFailed: return "SpliceVerificationFailed";
    case ErrorKind::SamplingFailed: return "SamplingFailed";
    case ErrorKind::ReservoirExhausted: return "ReservoirExhausted";
    case ErrorKind::MatchingInfeasible: return "MatchingInfeasible";
    case ErrorKind::HamiltonSearchExhausted: return "HamiltonSearchExhausted";
    case ErrorKind::AssemblyVerificationFailed: return "AssemblyVerificationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string detail)
    : kind_(kind), detail_(std::move(detail)) {
  render();
}

Error& Error::add_stage(std::string_view stage, int slot,
                        std::optional<std::uint64_t> seed) {
  std::string frame(stage);
  if (slot >= 0) frame += " slot=" + std::to_string(slot);
  if (seed) frame += " seed=" + std::to_string(*seed);
  trace_.push_back(std::move(frame));
  render();
  return *this;
}

void Error::render() {
  rendered_ = std::string(to_string(kind_)) + ": " + detail_;
  for (auto it = trace_.rbegin(); it != trace_.rend(); ++it) {
    rendered_ += "\n  at " + *it;
  }
}

void fail(ErrorKind kind, std::string detail) {
  throw Error(kind, std::move(detail));
}

}  // namespace hamdec
