// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/lab/fourier.hpp"

#include <cmath>
#include <numbers>

#include "evfront/error.hpp"

namespace evfront::lab {

std::string_view to_string(Metric m) { return m == Metric::F0 ? "F0" : "F1"; }

FourierMetrics fourier_metrics(const ResponseSeries& series) {
  const auto& v = series.values;
  if (v.size() < 2) throw ComputeError("Fourier metrics need at least two samples");
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
    mean += v[k];
    re += v[k] * std::cos(a);
    im -= v[k] * std::sin(a);
  }
  return {mean / n, 2.0 / n * std::hypot(re, im)};
}

}  // namespace evfront::lab
