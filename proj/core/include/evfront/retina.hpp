// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string_view>

#include "evfront/geometry.hpp"
#include "evfront/kernel.hpp"
#include "evfront/tensor.hpp"

namespace evfront::retina {

struct LightAdaptParams {
  double pool_radius_deg = 2.625;
  int kernel_px = 85;
  double epsilon = 1e-6;

  friend bool operator==(const LightAdaptParams&, const LightAdaptParams&) = default;
};

enum class Opponency { red_green, green_red, blue_yellow, achromatic };

std::string_view to_string(Opponency o);
Opponency opponency_from_string(std::string_view name);

/// Cone-proxy (R, G, B) weights feeding the DoG center and surround.
struct OpponencySpec {
  Opponency name = Opponency::achromatic;
  std::array<double, 3> center_weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  std::array<double, 3> surround_weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  friend bool operator==(const OpponencySpec&, const OpponencySpec&) = default;
};

/// Default weights: R-G and G-R use single cones; blue-yellow opposes B with
/// (R+G)/2; achromatic uses (R+G+B)/3 for both center and surround.
OpponencySpec default_opponency(Opponency name);

struct ContrastNormParams {
  double c50 = 0.3;
  double pool_radius_deg = 0.72;
  int kernel_px = 65;

  friend bool operator==(const ContrastNormParams&, const ContrastNormParams&) = default;
};

/// Output channel order of the block.
enum Channel : int { midget_rg = 0, midget_gr = 1, midget_by = 2, parasol = 3 };
inline constexpr int kNumChannels = 4;

struct RetinaBlockConfig {
  FieldGeometry geometry{2.0, 64};
  LightAdaptParams light_adapt{};
  DoGParams midget_dog{0.03, 0.18, 0.55, 21};
  DoGParams parasol_dog{0.10, 0.72, 0.55, 65};
  ContrastNormParams contrast_norm{};
  std::array<OpponencySpec, kNumChannels> opponency{
      default_opponency(Opponency::red_green), default_opponency(Opponency::green_red),
      default_opponency(Opponency::blue_yellow), default_opponency(Opponency::achromatic)};

  friend bool operator==(const RetinaBlockConfig&, const RetinaBlockConfig&) = default;
};

/// Throws ConfigError on any violated invariant, including the requirement
/// that the contrast-normalization pool matches the parasol surround.
void validate(const RetinaBlockConfig& cfg);
void validate(const OpponencySpec& spec);

struct LightAdapted {
  ImageTensor adapted;  // 3 channels
  Plane mean_lum;
};

/// Subtract and divide every channel by the Gaussian-pooled RGB mean.
LightAdapted light_adapt(const ImageTensor& image, const LightAdaptParams& p, const FieldGeometry& geom);

/// Signed color-opponent DoG response of a 3-channel light-adapted tensor.
Plane opponent_dog(const ImageTensor& adapted, const OpponencySpec& spec, const DoGParams& dog,
                   const FieldGeometry& geom);

/// x / (c50 + sqrt(x^2 * w)) with a Gaussian suppressive pool w.
Plane contrast_normalize(const PlaneView& x_dog, const ContrastNormParams& p, const FieldGeometry& geom);

/// Fixed-weight retina/LGN front-end. Kernels are built once at construction.
class RetinaBlock {
 public:
  explicit RetinaBlock(RetinaBlockConfig cfg);

  const RetinaBlockConfig& config() const { return cfg_; }

  /// 3-channel RGB image in [0, 1] -> 4-channel activations, same spatial size.
  ImageTensor forward(const ImageTensor& image) const;

  /// Computes a single output channel; equal to forward(image).channel(ch).
  Plane forward_channel(const ImageTensor& image, int channel) const;

  LightAdapted light_adapt(const ImageTensor& image) const;
  Plane opponent_dog(const ImageTensor& adapted, int channel) const;
  Plane contrast_normalize(const PlaneView& x_dog) const;

 private:
  void check_input(const ImageTensor& image) const;

  RetinaBlockConfig cfg_;
  Kernel la_pool_;
  Kernel midget_center_;
  Kernel midget_surround_;
  Kernel parasol_center_;
  Kernel parasol_surround_;
  Kernel cn_pool_;
};

}  // namespace evfront::retina
