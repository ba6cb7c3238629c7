#pragma once

#include <string>

#include "prefnet/experiments.hpp"

namespace prefnet {

// JSON config document; schema documented in the README. Unknown keys are
// rejected, base_seed is mandatory, and every omitted knob falls back to
// the default grid for the chosen dynamics rule.
SweepConfig parse_config(const std::string& text);
SweepConfig load_config_file(const std::string& path);

// Canonical JSON for a config; parse_config(serialize_config(c)) rebuilds
// the identical config (doubles round-trip bit-exactly).
std::string serialize_config(const SweepConfig& cfg);
void write_config_file(const SweepConfig& cfg, const std::string& path);

}  // namespace prefnet
