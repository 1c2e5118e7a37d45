// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "evfront/tensor.hpp"

namespace evfront::cli {

/// EVF1 activation file, all integers little-endian:
///
///   offset  size  field
///        0     4  magic "EVF1"
///        4     4  u32 version (1)
///        8     4  u32 channels
///       12     4  u32 height
///       16     4  u32 width
///       20     4  u32 dtype tag (1 = float32 little-endian)
///       24    32  SHA-256 of the run config
///       56     8  u64 GFB seed
///       64    32  SHA-256 of the source image file
///       96     -  payload, C*H*W float32, channel-major then row-major
struct ActivationBundle {
  static constexpr std::array<char, 4> kMagic{'E', 'V', 'F', '1'};
  static constexpr std::uint32_t kVersion = 1;
  static constexpr std::uint32_t kDtypeF32Le = 1;
  static constexpr std::size_t kHeaderSize = 96;

  std::uint32_t channels = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::array<std::uint8_t, 32> config_hash{};
  std::uint64_t seed = 0;
  std::array<std::uint8_t, 32> source_hash{};
  std::vector<float> payload;

  static ActivationBundle from_tensor(const ImageTensor& t);

  friend bool operator==(const ActivationBundle&, const ActivationBundle&) = default;
};

std::vector<std::uint8_t> encode_bundle(const ActivationBundle& b);
ActivationBundle decode_bundle(std::span<const std::uint8_t> bytes);

void write_bundle(const std::filesystem::path& path, const ActivationBundle& b);
ActivationBundle read_bundle(const std::filesystem::path& path);

}  // namespace evfront::cli
