#pragma once

#include <string>

#include "json.hpp"
#include "roughlab/ladder.hpp"

namespace roughlab {

// Parses the experiment configuration from the documented JSON schema
// (sections: driver, coefficients, exponents, levels, seeds, norm,
// psi_policy, phi, outputs). Missing or ill-typed fields raise errors that
// name the JSON pointer.
ExperimentConfig parse_config(const nlohmann::json& j);

// Applies a dotted-path override (e.g. "exponents.p=2.5") onto the raw JSON
// document; values parse as JSON scalars, falling back to strings.
void apply_override(nlohmann::json& j, const std::string& assignment);

// FNV-1a hash of the canonical (sorted-key) dump; the reproducibility tag
// carried by every output manifest.
std::string config_hash(const nlohmann::json& j);

inline constexpr const char* kArtifactVersion = "0.1.0";

// Deterministic manifest: {version, config_hash, config}.
nlohmann::json make_manifest(const nlohmann::json& config);

}  // namespace roughlab
