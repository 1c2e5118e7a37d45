// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "evfront/geometry.hpp"

namespace evfront {

enum class KernelKind { gaussian, dog, gabor_even, gabor_odd };

std::string_view to_string(KernelKind kind);

/// Fixed-weight 2D filter with odd side lengths, stored row-major.
///
/// Gaussian kernels are outer products of two 1D profiles; when that holds the
/// factors are kept so conv2d can run two 1D passes instead of one 2D pass.
class Kernel {
 public:
  struct Separable {
    std::vector<double> rows;  // vertical profile, length = height
    std::vector<double> cols;  // horizontal profile, length = width
  };

  Kernel(int height, int width, std::vector<double> weights, KernelKind kind,
         std::optional<Separable> separable = std::nullopt);

  int height() const { return height_; }
  int width() const { return width_; }
  KernelKind kind() const { return kind_; }
  double sum() const { return sum_; }
  std::span<const double> weights() const { return weights_; }
  double at(int row, int col) const { return weights_[static_cast<std::size_t>(row) * width_ + col]; }
  const std::optional<Separable>& separable() const { return separable_; }

 private:
  int height_;
  int width_;
  std::vector<double> weights_;
  KernelKind kind_;
  double sum_;
  std::optional<Separable> separable_;
};

/// Difference-of-Gaussians receptive field. Radii are 1/e radii in degrees;
/// the ratio is integrated surround strength over integrated center strength.
struct DoGParams {
  double rc_deg = 0.03;
  double rs_deg = 0.18;
  double surround_to_center_ratio = 0.55;
  int kernel_px = 21;

  friend bool operator==(const DoGParams&, const DoGParams&) = default;
};

void validate(const DoGParams& params);

/// Gabor receptive field. theta is the preferred stripe orientation (0 =
/// horizontal stripes, carrier varying along image rows); nx / ny are the
/// envelope widths across / along the stripes, in carrier cycles.
/// kernel_px = 0 selects the automatic size.
struct GaborParams {
  double theta = 0.0;
  double sf_cpd = 2.0;
  double phase = 0.0;
  double nx = 0.4;
  double ny = 0.4;
  int kernel_px = 0;

  friend bool operator==(const GaborParams&, const GaborParams&) = default;
};

inline constexpr double kGaborMinSfCpd = 0.5;
inline constexpr double kGaborMaxSfCpd = 11.3;
inline constexpr int kGaborMaxAutoKernelPx = 31;
/// Largest allowed ratio between the across-stripe envelope sigma and the
/// kernel side before a Gabor is rejected as not contained.
inline constexpr double kGaborContainmentLimit = 1.5;

void validate(const GaborParams& params, const FieldGeometry& geom);

/// Smallest odd side holding +-3 sigma of the envelope, capped at 31 px.
int auto_gabor_kernel_px(const GaborParams& params, const FieldGeometry& geom);

/// Unity-sum sampled exp(-(x^2 + y^2) / r^2), r = radius_deg in pixels.
Kernel gaussian_kernel(double radius_deg, int kernel_px, const FieldGeometry& geom);

/// (Gc - ratio * Gs) / (1 - ratio) with unity-sum Gc, Gs.
Kernel dog_kernel(const DoGParams& params, const FieldGeometry& geom);

/// Even (cosine) and odd (sine) Gabor kernels, each scaled to unit L2 norm.
std::pair<Kernel, Kernel> gabor_pair(const GaborParams& params, const FieldGeometry& geom);

/// Continuous-domain amplitude spectrum of a unity-sum DoG at sf_cpd.
double dog_analytic_spectrum(const DoGParams& params, double sf_cpd);

}  // namespace evfront
