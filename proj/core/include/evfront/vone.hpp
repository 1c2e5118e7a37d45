// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "evfront/geometry.hpp"
#include "evfront/kernel.hpp"
#include "evfront/retina.hpp"
#include "evfront/tensor.hpp"

namespace evfront::vone {

/// Piecewise-constant density: weights[i] over [edges[i], edges[i+1]).
struct HistogramTable {
  std::vector<double> edges;
  std::vector<double> weights;

  friend bool operator==(const HistogramTable&, const HistogramTable&) = default;
};

/// Log-uniform envelope widths: nx in [nx_min, nx_max], ny = nx * k with k
/// log-uniform in [ny_ratio_min, ny_ratio_max].
struct EnvelopeTable {
  double nx_min = 0.1;
  double nx_max = 0.7;
  double ny_ratio_min = 1.0;
  double ny_ratio_max = 3.0;

  friend bool operator==(const EnvelopeTable&, const EnvelopeTable&) = default;
};

struct GFBConfig {
  int n_units = 512;
  int n_simple = 256;
  int n_complex = 256;
  double sf_min_cpd = kGaborMinSfCpd;
  double sf_max_cpd = kGaborMaxSfCpd;
  /// Preferred orientation in degrees; negative samples wrap by +180.
  HistogramTable orientation_deg{{-22.5, 22.5, 67.5, 112.5, 157.5}, {66.0, 49.0, 77.0, 54.0}};
  /// Peak SF histogram; sampled log-uniformly within each bin.
  HistogramTable sf_cpd{{0.5, 0.7, 1.0, 1.4, 2.0, 2.8, 4.0, 5.6, 8.0},
                        {4.0, 4.0, 8.0, 25.0, 32.0, 26.0, 28.0, 12.0}};
  EnvelopeTable envelope{};
  int kernel_px = 0;  // 0 = automatic per unit
  int stride = 2;
  std::uint64_t seed = 0;

  friend bool operator==(const GFBConfig&, const GFBConfig&) = default;
};

void validate(const GFBConfig& cfg);

enum class CellType { simple, complex };

std::string_view to_string(CellType t);
CellType cell_type_from_string(std::string_view s);

struct GaborUnit {
  GaborParams params;
  CellType cell_type = CellType::simple;
  int input_channel = 0;

  friend bool operator==(const GaborUnit&, const GaborUnit&) = default;
};

/// Immutable bank of Gabor units with their kernels precomputed.
class GaborBank {
 public:
  GaborBank(std::vector<GaborUnit> units, FieldGeometry geometry, int stride, std::uint64_t seed,
            int input_channels);

  const std::vector<GaborUnit>& units() const { return units_; }
  std::size_t size() const { return units_.size(); }
  const FieldGeometry& geometry() const { return geometry_; }
  int stride() const { return stride_; }
  std::uint64_t seed() const { return seed_; }
  int input_channels() const { return input_channels_; }

  const Kernel& even_kernel(std::size_t i) const { return kernels_[i].first; }
  const Kernel& odd_kernel(std::size_t i) const { return kernels_[i].second; }

  /// Response map of unit i (ceil(H / stride) square).
  Plane response(std::size_t i, const ImageTensor& input) const;

  /// Response of unit i at output pixel (row, col) of its strided map.
  double response_at(std::size_t i, const ImageTensor& input, int row, int col) const;

  /// Same as above with the unit's input plane supplied directly.
  double response_at(std::size_t i, const PlaneView& plane, int row, int col) const;

  /// Output index whose receptive-field centre is nearest the image centre.
  int center_output_index() const;

 private:
  void check_input(std::size_t i, const ImageTensor& input) const;

  std::vector<GaborUnit> units_;
  FieldGeometry geometry_;
  int stride_;
  std::uint64_t seed_;
  int input_channels_;
  std::vector<std::pair<Kernel, Kernel>> kernels_;
};

/// Deterministic for a fixed (cfg, input_channels): units [0, n_simple) are
/// simple cells, the rest complex; each reads one uniformly drawn channel.
GaborBank sample_gfb(const GFBConfig& cfg, const FieldGeometry& geom, int input_channels);

/// Simple: max(0, even * x). Complex: sqrt((even * x)^2 + (odd * x)^2).
Plane unit_response(const GaborUnit& unit, const ImageTensor& input, const FieldGeometry& geom, int stride);

/// One channel per unit, in bank order.
ImageTensor voneblock_forward(const ImageTensor& input, const GaborBank& bank);

/// VOneBlock applied to the 4-channel RetinaBlock output.
ImageTensor evfront_forward(const ImageTensor& image, const retina::RetinaBlock& retina, const GaborBank& bank);

/// Maps [0, 1] pixels to [-1, 1] ((x - 0.5) / 0.5), the input scaling used
/// when the VOneBlock is not preceded by the RetinaBlock.
ImageTensor center_pixels(const ImageTensor& image);

}  // namespace evfront::vone
