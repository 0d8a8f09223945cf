#pragma once

#include <string>
#include <string_view>

#include "hamdec/generator.hpp"
#include "hamdec/pipeline.hpp"
#include "hamdec/verify.hpp"

namespace hamdec {

PartitionMode partition_mode_from_string(std::string_view text);

// JSON documents carry "schema": 1 and sorted keys; output is byte-stable.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(std::string_view text);

std::string certificate_to_json(const Certificate& certificate);
Certificate certificate_from_json(std::string_view text);

std::string report_to_json(const VerificationReport& report);

// Overrides fields of `base` from a flat JSON object; unknown keys throw.
PipelineParams params_from_json(std::string_view text, PipelineParams base);
InstanceConfig config_from_json(std::string_view text, InstanceConfig base);

// Graphviz rendering: clusters as subgraphs, exceptional vertices boxed,
// and the edges of `slot` (when given) drawn bold.
std::string to_dot(const Instance& instance, const CertificateSlot* slot = nullptr);

}  // namespace hamdec
