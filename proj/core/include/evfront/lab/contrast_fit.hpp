// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "evfront/lab/tuning.hpp"

namespace evfront::lab {

/// Linear-then-logarithmic contrast response:
///   R(c) = s * c                       for c <= c0
///   R(c) = s * c0 * (1 + ln(c / c0))   for c >  c0
struct ContrastFit {
  double saturation_onset_c0 = 1.0;
  double linear_slope = 0.0;
  double log_gain = 0.0;  // s * c0, the coefficient of ln(c) past c0
  double residual = 0.0;  // RMSE
  bool saturates = false;  // c0 below the largest stimulus
  bool degenerate = false;  // responses carry no signal (all zero)
};

double log_saturation_model(double c, double slope, double c0);

/// Least squares in the slope for each c0; c0 grid-searched over the
/// stimulus values then refined by golden-section search. Needs >= 6
/// points with non-negative responses (ComputeError otherwise).
ContrastFit fit_log_saturation(const TuningCurve& curve);

}  // namespace evfront::lab
