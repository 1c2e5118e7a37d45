// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "evfront/geometry.hpp"
#include "evfront/tensor.hpp"

namespace evfront::lab {

enum class Aperture { hard, raised_cosine, full_field };

/// Drifting sine-wave grating. Luminance inside the aperture is
/// mean * (1 + C * w_c * sin(2 pi sf u + k * step)), u being the distance in
/// degrees across the stripes from the image centre pixel (H/2, W/2).
/// orientation = 0 gives horizontal stripes.
struct GratingSpec {
  double sf_cpd = 1.0;
  double contrast = 1.0;
  double orientation = 0.0;
  double diameter_deg = 1.0;
  int n_frames = 12;
  double phase_step_deg = 30.0;
  double mean_luminance = 0.5;
  std::array<double, 3> chromatic_weights{1.0, 1.0, 1.0};
  Aperture aperture = Aperture::hard;
  double taper_deg = 0.1;  // raised_cosine only
};

void validate(const GratingSpec& spec, const FieldGeometry& geom);

/// n_frames RGB frames in [0, 1]. Throws StimulusError for invalid stimuli.
std::vector<ImageTensor> grating_frames(const GratingSpec& spec, const FieldGeometry& geom);

/// Aperture weight in [0, 1] at pixel (row, col).
double aperture_weight(const GratingSpec& spec, const FieldGeometry& geom, int row, int col);

/// (Lmax - Lmin) / (Lmax + Lmin) over every in-aperture pixel of every frame
/// and channel.
double measured_contrast(const std::vector<ImageTensor>& frames, const GratingSpec& spec,
                         const FieldGeometry& geom);

/// 24 log-spaced SFs from 0.1 to 9.3 cpd, endpoints exact.
std::vector<double> sf_grid();

/// 24 linearly spaced contrasts from 0 to 1, endpoints exact.
std::vector<double> contrast_grid();

std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace evfront::lab
