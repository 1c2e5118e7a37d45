// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/cli/bundle.hpp"

#include <algorithm>
#include <cstring>

#include "evfront/cli/io.hpp"
#include "evfront/error.hpp"

namespace evfront::cli {

ActivationBundle ActivationBundle::from_tensor(const ImageTensor& t) {
  ActivationBundle b;
  b.channels = static_cast<std::uint32_t>(t.channels());
  b.height = static_cast<std::uint32_t>(t.height());
  b.width = static_cast<std::uint32_t>(t.width());
  b.payload.reserve(static_cast<std::size_t>(b.channels) * b.height * b.width);
  for (int c = 0; c < t.channels(); ++c) {
    for (double v : t.channel_span(c)) b.payload.push_back(static_cast<float>(v));
  }
  return b;
}

std::vector<std::uint8_t> encode_bundle(const ActivationBundle& b) {
  const std::size_t expected = static_cast<std::size_t>(b.channels) * b.height * b.width;
  if (b.payload.size() != expected) {
    throw ShapeError("bundle payload has " + std::to_string(b.payload.size()) + " values, header implies " +
                     std::to_string(expected));
  }
  std::vector<std::uint8_t> out;
  out.reserve(ActivationBundle::kHeaderSize + 4 * expected);
  out.insert(out.end(), ActivationBundle::kMagic.begin(), ActivationBundle::kMagic.end());
  append_u32_le(out, ActivationBundle::kVersion);
  append_u32_le(out, b.channels);
  append_u32_le(out, b.height);
  append_u32_le(out, b.width);
  append_u32_le(out, ActivationBundle::kDtypeF32Le);
  out.insert(out.end(), b.config_hash.begin(), b.config_hash.end());
  append_u64_le(out, b.seed);
  out.insert(out.end(), b.source_hash.begin(), b.source_hash.end());
  for (float v : b.payload) append_f32_le(out, v);
  return out;
}

ActivationBundle decode_bundle(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < ActivationBundle::kHeaderSize) throw IoError("EVF1 file shorter than its header");
  if (!std::equal(ActivationBundle::kMagic.begin(), ActivationBundle::kMagic.end(), bytes.begin())) {
    throw IoError("bad EVF1 magic");
  }
  const std::uint8_t* p = bytes.data();
  if (read_u32_le(p + 4) != ActivationBundle::kVersion) throw IoError("unsupported EVF1 version");
  ActivationBundle b;
  b.channels = read_u32_le(p + 8);
  b.height = read_u32_le(p + 12);
  b.width = read_u32_le(p + 16);
  if (read_u32_le(p + 20) != ActivationBundle::kDtypeF32Le) throw IoError("unsupported EVF1 dtype");
  std::memcpy(b.config_hash.data(), p + 24, 32);
  b.seed = read_u64_le(p + 56);
  std::memcpy(b.source_hash.data(), p + 64, 32);
  const std::size_t n = static_cast<std::size_t>(b.channels) * b.height * b.width;
  if (bytes.size() != ActivationBundle::kHeaderSize + 4 * n) throw IoError("EVF1 payload length mismatch");
  b.payload.resize(n);
  for (std::size_t i = 0; i < n; ++i) b.payload[i] = read_f32_le(p + ActivationBundle::kHeaderSize + 4 * i);
  return b;
}

void write_bundle(const std::filesystem::path& path, const ActivationBundle& b) {
  write_file_atomic(path, encode_bundle(b));
}

ActivationBundle read_bundle(const std::filesystem::path& path) { return decode_bundle(read_file(path)); }

}  // namespace evfront::cli
