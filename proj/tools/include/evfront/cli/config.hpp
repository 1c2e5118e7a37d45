// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evfront/retina.hpp"
#include "evfront/vone.hpp"

namespace evfront::cli {

/// Everything a CLI run needs. The GFB seed always equals `seed`.
struct RunConfig {
  retina::RetinaBlockConfig retina{};
  vone::GFBConfig gfb{};
  std::uint64_t seed = 0;
  std::vector<std::string> experiments{"midget_sf", "parasol_sf", "midget_contrast", "parasol_contrast",
                                       "population"};
  std::string output_dir = "out";

  const FieldGeometry& geometry() const { return retina.geometry; }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Experiments understood by `report`.
const std::vector<std::string>& known_experiments();

/// Parses and fully validates a config tree. Missing keys take defaults;
/// unknown keys raise ConfigError.
RunConfig parse_run_config(const nlohmann::json& j);

/// Complete tree with every key spelled out; parse(emit(c)) == c.
nlohmann::json emit_run_config(const RunConfig& cfg);

RunConfig load_run_config(const std::filesystem::path& path);

void validate(const RunConfig& cfg);

/// SHA-256 (hex) of the canonical serialized config.
std::string config_hash(const RunConfig& cfg);

}  // namespace evfront::cli
