// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "evfront/lab/fourier.hpp"
#include "evfront/lab/grating.hpp"
#include "evfront/retina.hpp"
#include "evfront/vone.hpp"

namespace evfront::lab {

/// Maps one stimulus frame to the activation of the recorded unit.
using Probe = std::function<double(const ImageTensor&)>;
using ForwardFn = std::function<ImageTensor(const ImageTensor&)>;

/// Runs `forward` on every frame and reads channel `channel` at
/// (floor(H/2), floor(W/2)).
ResponseSeries record_center(std::span<const ImageTensor> frames, const ForwardFn& forward, int channel,
                             Metric metric = Metric::F1);

ResponseSeries record(std::span<const ImageTensor> frames, const Probe& probe, Metric metric);

/// Where a retinal unit is read out.
enum class RetinaProbePoint {
  full,      // light adaptation -> DoG -> (parasol) contrast normalization
  dog_only,  // DoG layer alone on the mean-subtracted luminance
};

/// Centre cell of a RetinaBlock channel.
Probe retina_probe(const retina::RetinaBlock& block, int channel,
                   RetinaProbePoint point = RetinaProbePoint::full);

/// Centre cell of a bare DoG layer applied to the achromatic luminance.
Probe dog_probe(const DoGParams& params, const FieldGeometry& geom);

/// Centre cell of VOneBlock unit `unit`. Without a RetinaBlock the frame is
/// first mapped to [-1, 1]; with one, the unit reads the retina channel.
Probe vone_probe(const vone::GaborBank& bank, std::size_t unit, const retina::RetinaBlock* retina = nullptr);

/// F0 for complex cells, F1 for everything else.
Metric metric_for(vone::CellType type);

enum class Axis { sf, contrast };

std::string_view to_string(Axis a);

struct TuningPoint {
  double stimulus = 0.0;
  double f0 = 0.0;
  double f1 = 0.0;
  double response = 0.0;  // the selected metric
};

struct TuningCurve {
  Axis axis = Axis::sf;
  Metric metric = Metric::F1;
  std::string unit_id;
  double fixed_value = 0.0;  // contrast for SF curves, SF for contrast curves
  std::vector<TuningPoint> points;

  std::vector<double> stimuli() const;
  std::vector<double> responses() const;
};

/// SF tuning on sf_grid() at fixed contrast; `base` supplies the remaining
/// stimulus fields (orientation, aperture, ...).
TuningCurve sf_tuning(const Probe& probe, Metric metric, const FieldGeometry& geom, double contrast = 1.0,
                      GratingSpec base = {}, std::string unit_id = {});

/// Contrast response on contrast_grid() at fixed SF.
TuningCurve contrast_curve(const Probe& probe, Metric metric, const FieldGeometry& geom, double sf_cpd,
                           GratingSpec base = {}, std::string unit_id = {});

/// Stimulus value at the maximum response; ties resolve to the lower SF.
double optimal_sf(const TuningCurve& curve);

struct Bandwidth {
  double octaves = 0.0;
  double f_low = 0.0;
  double f_high = 0.0;
  bool open_low = false;   // never fell to half max below the peak
  bool open_high = false;  // never fell to half max above the peak
};

/// Full width at half amplitude in octaves, crossings interpolated linearly
/// in log SF. Throws ComputeError for flat or non-positive curves.
Bandwidth sf_bandwidth(const TuningCurve& curve);

}  // namespace evfront::lab
