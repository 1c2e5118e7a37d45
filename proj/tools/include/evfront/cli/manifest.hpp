// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "evfront/cli/config.hpp"

namespace evfront::cli {

/// Fixed-weight artifacts of a run: the RetinaBlock kernels and the Gabor
/// bank, as a JSON manifest plus a raw float32 LE weight blob.
struct BuildArtifacts {
  nlohmann::json manifest;
  std::vector<std::uint8_t> weights;
};

BuildArtifacts build_artifacts(const RunConfig& cfg);

/// Regenerates the weight blob from the manifest alone (no resampling).
std::vector<std::uint8_t> rebuild_weights(const nlohmann::json& manifest);

/// Bank listed in a manifest, for the "vone" (3 input channels) or "ev"
/// (4 input channels) front-end.
vone::GaborBank bank_from_manifest(const nlohmann::json& manifest, bool for_ev);

}  // namespace evfront::cli
