// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "evfront/cli/config.hpp"

namespace evfront::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kIoError = 3, kComputeError = 4 };

enum class Front { retina, vone, ev };

Front front_from_string(const std::string& s);

/// Options shared by every subcommand. `seed` and `out` override the config.
struct CommonOptions {
  std::optional<std::filesystem::path> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
};

RunConfig resolve_config(const CommonOptions& opts);
std::filesystem::path resolve_out(const CommonOptions& opts, const RunConfig& cfg);

/// Each command writes its outputs under the resolved output directory and
/// throws evfront::Error subclasses on failure.
void cmd_build(const CommonOptions& opts);
std::filesystem::path cmd_apply(const CommonOptions& opts, const std::filesystem::path& image, Front front);
void cmd_probe(const CommonOptions& opts, const std::string& target, const std::string& axis, bool with_retina);
void cmd_population(const CommonOptions& opts, bool with_retina);
void cmd_report(const CommonOptions& opts);

/// Maps an exception escaping a command to its exit code, printing it.
int exit_code_for_current_exception();

}  // namespace evfront::cli
