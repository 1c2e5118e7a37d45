// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

namespace evfront::lab {

enum class Metric { F0, F1 };

std::string_view to_string(Metric m);

/// Activations of one recorded unit, one value per grating frame.
struct ResponseSeries {
  std::vector<double> values;
  Metric metric_kind = Metric::F1;
};

struct FourierMetrics {
  double f0 = 0.0;  // mean
  double f1 = 0.0;  // 2/N |sum v_k exp(-2 pi i k / N)|

  double select(Metric m) const { return m == Metric::F0 ? f0 : f1; }
};

/// Throws ComputeError for series shorter than two samples.
FourierMetrics fourier_metrics(const ResponseSeries& series);

}  // namespace evfront::lab
