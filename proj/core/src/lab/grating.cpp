// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/lab/grating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "evfront/error.hpp"

namespace evfront::lab {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void validate(const GratingSpec& s, const FieldGeometry& geom) {
  if (!(s.sf_cpd > 0.0)) throw StimulusError("grating SF must be positive");
  if (s.sf_cpd >= geom.nyquist_cpd()) {
    throw StimulusError("grating SF " + std::to_string(s.sf_cpd) + " cpd is at or above Nyquist (" +
                        std::to_string(geom.nyquist_cpd()) + " cpd)");
  }
  if (!(s.contrast >= 0.0 && s.contrast <= 1.0)) throw StimulusError("grating contrast must lie in [0, 1]");
  if (s.n_frames < 2) throw StimulusError("a drifting grating needs at least two frames");
  if (std::abs(s.n_frames * s.phase_step_deg - 360.0) > 1e-9) {
    throw StimulusError("n_frames * phase_step_deg must cover exactly one cycle (360 deg)");
  }
  if (s.aperture != Aperture::full_field) {
    if (!(s.diameter_deg > 0.0 && s.diameter_deg <= geom.fov_deg())) {
      throw StimulusError("aperture diameter must lie in (0, field of view]");
    }
    if (s.aperture == Aperture::raised_cosine && !(s.taper_deg > 0.0 && s.taper_deg <= s.diameter_deg / 2.0)) {
      throw StimulusError("raised-cosine taper must lie in (0, radius]");
    }
  }
  if (!(s.mean_luminance > 0.0 && s.mean_luminance <= 1.0)) {
    throw StimulusError("mean luminance must lie in (0, 1]");
  }
  for (double w : s.chromatic_weights) {
    if (!(std::abs(w) <= 1.0)) throw StimulusError("chromatic weights must lie in [-1, 1]");
    if (s.mean_luminance * (1.0 + s.contrast * std::abs(w)) > 1.0 + 1e-12) {
      throw StimulusError("grating would exceed the [0, 1] luminance range");
    }
  }
}

double aperture_weight(const GratingSpec& s, const FieldGeometry& geom, int row, int col) {
  if (s.aperture == Aperture::full_field) return 1.0;
  const int n = geom.resolution_px();
  const double dy = static_cast<double>(row - n / 2);
  const double dx = static_cast<double>(col - n / 2);
  const double r = std::hypot(dx, dy) / geom.px_per_deg();
  const double radius = s.diameter_deg / 2.0;
  if (s.aperture == Aperture::hard) return r <= radius ? 1.0 : 0.0;
  const double inner = radius - s.taper_deg;
  if (r <= inner) return 1.0;
  if (r >= radius) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (r - inner) / s.taper_deg));
}

std::vector<ImageTensor> grating_frames(const GratingSpec& s, const FieldGeometry& geom) {
  validate(s, geom);
  const int n = geom.resolution_px();
  const std::size_t npx = static_cast<std::size_t>(n) * n;
  const double sn = std::sin(s.orientation);
  const double cs = std::cos(s.orientation);
  const double k = 2.0 * kPi * s.sf_cpd / geom.px_per_deg();

  // sin(a + phi) = sin(a) cos(phi) + cos(a) sin(phi); the spatial terms are
  // shared by every frame.
  std::vector<double> sin_a(npx), cos_a(npx), mask(npx);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * n + c;
      const double u = -static_cast<double>(c - n / 2) * sn + static_cast<double>(r - n / 2) * cs;
      sin_a[i] = std::sin(k * u);
      cos_a[i] = std::cos(k * u);
      mask[i] = aperture_weight(s, geom, r, c);
    }
  }

  std::vector<ImageTensor> frames;
  frames.reserve(s.n_frames);
  for (int f = 0; f < s.n_frames; ++f) {
    const double phi = f * s.phase_step_deg * kPi / 180.0;
    const double sp = std::sin(phi);
    const double cp = std::cos(phi);
    ImageTensor frame(3, n, n);
    for (int ch = 0; ch < 3; ++ch) {
      auto dst = frame.channel_span(ch);
      const double amp = s.contrast * s.chromatic_weights[ch];
      for (std::size_t i = 0; i < npx; ++i) {
        const double mod = sin_a[i] * cp + cos_a[i] * sp;
        dst[i] = s.mean_luminance * (1.0 + amp * mask[i] * mod);
      }
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

double measured_contrast(const std::vector<ImageTensor>& frames, const GratingSpec& s, const FieldGeometry& geom) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const int n = geom.resolution_px();
  for (const auto& f : frames) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        if (aperture_weight(s, geom, r, c) < 1.0) continue;
        for (int ch = 0; ch < f.channels(); ++ch) {
          lo = std::min(lo, f.at(ch, r, c));
          hi = std::max(hi, f.at(ch, r, c));
        }
      }
    }
  }
  if (!(hi + lo > 0.0)) throw ComputeError("grating has no in-aperture luminance");
  return (hi - lo) / (hi + lo);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw ConfigError("invalid log grid");
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw ConfigError("invalid linear grid");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> sf_grid() { return log_grid(0.1, 9.3, 24); }

std::vector<double> contrast_grid() { return linear_grid(0.0, 1.0, 24); }

}  // namespace evfront::lab
