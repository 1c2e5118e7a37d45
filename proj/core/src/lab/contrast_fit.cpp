// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/lab/contrast_fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "evfront/error.hpp"

namespace evfront::lab {

namespace {

struct Trial {
  double c0 = 1.0;
  double slope = 0.0;
  double rmse = 0.0;
};

// Model shape with unit slope.
double shape(double c, double c0) { return c <= c0 ? c : c0 * (1.0 + std::log(c / c0)); }

Trial evaluate(const std::vector<double>& c, const std::vector<double>& r, double c0) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double m = shape(c[i], c0);
    num += m * r[i];
    den += m * m;
  }
  Trial t{c0, den > 0.0 ? num / den : 0.0, 0.0};
  double sse = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double e = r[i] - t.slope * shape(c[i], c0);
    sse += e * e;
  }
  t.rmse = std::sqrt(sse / static_cast<double>(c.size()));
  return t;
}

}  // namespace

double log_saturation_model(double c, double slope, double c0) { return slope * shape(c, c0); }

ContrastFit fit_log_saturation(const TuningCurve& curve) {
  if (curve.axis != Axis::contrast) throw ComputeError("log-saturation fit needs a contrast curve");
  if (curve.points.size() < 6) throw ComputeError("log-saturation fit needs at least 6 points");
  const auto c = curve.stimuli();
  const auto r = curve.responses();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(r[i] >= 0.0)) throw ComputeError("log-saturation fit needs non-negative responses");
    if (!(c[i] >= 0.0)) throw ComputeError("contrast values must be non-negative");
    if (i > 0 && !(c[i] > c[i - 1])) throw ComputeError("contrast values must be strictly increasing");
  }

  std::vector<double> candidates;
  for (double v : c) {
    if (v > 0.0) candidates.push_back(v);
  }
  if (candidates.empty()) throw ComputeError("log-saturation fit needs a positive contrast");

  ContrastFit fit;
  const double c_max = candidates.back();
  if (std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; })) {
    fit.saturation_onset_c0 = c_max;
    fit.degenerate = true;
    return fit;
  }

  std::size_t best_i = 0;
  Trial best = evaluate(c, r, candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const Trial t = evaluate(c, r, candidates[i]);
    if (t.rmse < best.rmse) {
      best = t;
      best_i = i;
    }
  }

  // Golden-section refinement between the neighbouring grid points.
  double lo = best_i > 0 ? candidates[best_i - 1] : candidates[0] / 2.0;
  double hi = best_i + 1 < candidates.size() ? candidates[best_i + 1] : c_max;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  Trial t1 = evaluate(c, r, x1);
  Trial t2 = evaluate(c, r, x2);
  for (int iter = 0; iter < 100 && hi - lo > 1e-10; ++iter) {
    if (t1.rmse < t2.rmse) {
      hi = x2;
      x2 = x1;
      t2 = t1;
      x1 = hi - inv_phi * (hi - lo);
      t1 = evaluate(c, r, x1);
    } else {
      lo = x1;
      x1 = x2;
      t1 = t2;
      x2 = lo + inv_phi * (hi - lo);
      t2 = evaluate(c, r, x2);
    }
  }
  // Only accept the refinement for a real improvement, so that rounding noise
  // cannot pull an exact boundary fit (e.g. linear data, c0 = c_max) inward.
  double rms_r = 0.0;
  for (double v : r) rms_r += v * v;
  rms_r = std::sqrt(rms_r / static_cast<double>(r.size()));
  const Trial refined = t1.rmse < t2.rmse ? t1 : t2;
  if (best.rmse - refined.rmse > 1e-12 * rms_r) best = refined;

  fit.saturation_onset_c0 = best.c0;
  fit.linear_slope = best.slope;
  fit.log_gain = best.slope * best.c0;
  fit.residual = best.rmse;
  fit.saturates = best.c0 < c_max;
  return fit;
}

}  // namespace evfront::lab
