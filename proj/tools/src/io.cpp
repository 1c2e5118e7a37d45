// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/cli/io.hpp"

#include <png.h>
#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "evfront/error.hpp"

namespace evfront::cli {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw IoError("short write to " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

void write_text_atomic(const fs::path& path, std::string_view text) {
  write_file_atomic(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read error on " + path.string());
  return bytes;
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> bytes) {
  std::array<std::uint8_t, 32> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32) {
    throw ComputeError("SHA-256 digest failed");
  }
  return digest;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xf]);
  }
  return s;
}

namespace {

// RAII owner for the libpng simplified-API control structure.
struct PngImage {
  png_image image{};
  PngImage() { image.version = PNG_IMAGE_VERSION; }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

}  // namespace

ImageTensor read_png_rgb(const fs::path& path) {
  const auto bytes = read_file(path);
  PngImage p;
  if (png_image_begin_read_from_memory(&p.image, bytes.data(), bytes.size()) == 0) {
    throw IoError(path.string() + ": " + p.image.message);
  }
  // RGBA keeps samples unassociated; the alpha channel is then dropped.
  p.image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(p.image));
  if (png_image_finish_read(&p.image, nullptr, pixels.data(), 0, nullptr) == 0) {
    throw IoError(path.string() + ": " + p.image.message);
  }
  const int H = static_cast<int>(p.image.height);
  const int W = static_cast<int>(p.image.width);
  ImageTensor img(3, H, W);
  for (int c = 0; c < 3; ++c) {
    auto dst = img.channel_span(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = pixels[4 * i + c] / 255.0;
  }
  return img;
}

void write_png_rgb(const fs::path& path, const ImageTensor& image) {
  if (image.channels() != 3) throw ShapeError("PNG output needs a 3-channel tensor");
  const int H = image.height();
  const int W = image.width();
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(H) * W * 3);
  for (int c = 0; c < 3; ++c) {
    auto src = image.channel_span(c);
    for (std::size_t i = 0; i < src.size(); ++i) {
      const double v = std::clamp(src[i], 0.0, 1.0);
      pixels[3 * i + c] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
  }
  PngImage p;
  p.image.width = static_cast<png_uint_32>(W);
  p.image.height = static_cast<png_uint_32>(H);
  p.image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (png_image_write_to_memory(&p.image, nullptr, &size, 0, pixels.data(), 0, nullptr) == 0) {
    throw IoError(std::string("PNG encode: ") + p.image.message);
  }
  std::vector<std::uint8_t> encoded(size);
  if (png_image_write_to_memory(&p.image, encoded.data(), &size, 0, pixels.data(), 0, nullptr) == 0) {
    throw IoError(std::string("PNG encode: ") + p.image.message);
  }
  encoded.resize(size);
  write_file_atomic(path, encoded);
}

void append_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t read_u32_le(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

void append_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t read_u64_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

void append_f32_le(std::vector<std::uint8_t>& out, float v) { append_u32_le(out, std::bit_cast<std::uint32_t>(v)); }

float read_f32_le(const std::uint8_t* p) { return std::bit_cast<float>(read_u32_le(p)); }

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace evfront::cli
