// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evfront/tensor.hpp"

namespace evfront::cli {

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_atomic(const std::filesystem::path& path, std::string_view text);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> bytes);
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Decodes any PNG to 3-channel RGB in [0, 1] (alpha dropped, gray expanded).
ImageTensor read_png_rgb(const std::filesystem::path& path);

/// 8-bit RGB PNG from a 3-channel tensor in [0, 1] (values are clamped).
void write_png_rgb(const std::filesystem::path& path, const ImageTensor& image);

/// Little-endian float32 serialization.
void append_f32_le(std::vector<std::uint8_t>& out, float v);
float read_f32_le(const std::uint8_t* p);
void append_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v);
std::uint32_t read_u32_le(const std::uint8_t* p);
void append_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v);
std::uint64_t read_u64_le(const std::uint8_t* p);

/// Shortest "%.*g" form that round-trips the double.
std::string format_number(double v);

}  // namespace evfront::cli
