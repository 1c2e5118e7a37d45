// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "evfront/error.hpp"

namespace evfront {

namespace {

constexpr double kPi = std::numbers::pi;

void check_odd(int kernel_px, const char* what) {
  if (kernel_px < 1 || kernel_px % 2 == 0) {
    throw ConfigError(std::string(what) + " kernel size must be odd and positive, got " +
                      std::to_string(kernel_px));
  }
}

// Unity-sum samples of exp(-(i - h)^2 / r^2) at pixel centres.
std::vector<double> gaussian_profile(double radius_px, int kernel_px) {
  const int half = kernel_px / 2;
  std::vector<double> p(kernel_px);
  for (int i = 0; i < kernel_px; ++i) {
    const double d = static_cast<double>(i - half) / radius_px;
    p[i] = std::exp(-d * d);
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return p;
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::gaussian: return "gaussian";
    case KernelKind::dog: return "dog";
    case KernelKind::gabor_even: return "gabor-even";
    case KernelKind::gabor_odd: return "gabor-odd";
  }
  return "unknown";
}

Kernel::Kernel(int height, int width, std::vector<double> weights, KernelKind kind,
               std::optional<Separable> separable)
    : height_(height), width_(width), weights_(std::move(weights)), kind_(kind),
      separable_(std::move(separable)) {
  if (height < 1 || width < 1 || height % 2 == 0 || width % 2 == 0) {
    throw ConfigError("kernel sides must be odd, got " + std::to_string(height) + "x" +
                      std::to_string(width));
  }
  if (weights_.size() != static_cast<std::size_t>(height) * width) {
    throw ConfigError("kernel weight count does not match its shape");
  }
  if (separable_ && (separable_->rows.size() != static_cast<std::size_t>(height) ||
                     separable_->cols.size() != static_cast<std::size_t>(width))) {
    throw ConfigError("separable factors do not match kernel shape");
  }
  sum_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

void validate(const DoGParams& p) {
  if (!(p.rc_deg > 0.0)) throw ConfigError("DoG center radius must be positive");
  if (!(p.rc_deg < p.rs_deg)) {
    throw ConfigError("DoG center radius must be smaller than the surround radius (rc=" +
                      std::to_string(p.rc_deg) + ", rs=" + std::to_string(p.rs_deg) + ")");
  }
  if (!(p.surround_to_center_ratio > 0.0 && p.surround_to_center_ratio < 1.0)) {
    throw ConfigError("DoG surround/center ratio must lie in (0, 1)");
  }
  check_odd(p.kernel_px, "DoG");
  if (p.kernel_px < 3) throw ConfigError("DoG kernel must be at least 3 px");
}

Kernel gaussian_kernel(double radius_deg, int kernel_px, const FieldGeometry& geom) {
  if (!(radius_deg > 0.0 && std::isfinite(radius_deg))) {
    throw ConfigError("gaussian radius must be positive");
  }
  check_odd(kernel_px, "gaussian");
  if (kernel_px > 4 * geom.resolution_px()) {
    throw ConfigError("gaussian kernel of " + std::to_string(kernel_px) +
                      " px exceeds four times the image resolution");
  }
  auto profile = gaussian_profile(geom.to_px(radius_deg), kernel_px);
  std::vector<double> w(static_cast<std::size_t>(kernel_px) * kernel_px);
  for (int r = 0; r < kernel_px; ++r) {
    for (int c = 0; c < kernel_px; ++c) {
      w[static_cast<std::size_t>(r) * kernel_px + c] = profile[r] * profile[c];
    }
  }
  return Kernel(kernel_px, kernel_px, std::move(w), KernelKind::gaussian,
                Kernel::Separable{profile, profile});
}

Kernel dog_kernel(const DoGParams& p, const FieldGeometry& geom) {
  validate(p);
  const Kernel center = gaussian_kernel(p.rc_deg, p.kernel_px, geom);
  const Kernel surround = gaussian_kernel(p.rs_deg, p.kernel_px, geom);
  const double q = p.surround_to_center_ratio;
  std::vector<double> w(center.weights().size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = (center.weights()[i] - q * surround.weights()[i]) / (1.0 - q);
  }
  return Kernel(p.kernel_px, p.kernel_px, std::move(w), KernelKind::dog);
}

double dog_analytic_spectrum(const DoGParams& p, double sf_cpd) {
  const double q = p.surround_to_center_ratio;
  const double a = kPi * p.rc_deg * sf_cpd;
  const double b = kPi * p.rs_deg * sf_cpd;
  return (std::exp(-a * a) - q * std::exp(-b * b)) / (1.0 - q);
}

int auto_gabor_kernel_px(const GaborParams& p, const FieldGeometry& geom) {
  const double sigma = std::max(p.nx, p.ny) / p.sf_cpd * geom.px_per_deg();
  const int half = static_cast<int>(std::ceil(3.0 * sigma));
  return std::min(2 * half + 1, kGaborMaxAutoKernelPx);
}

void validate(const GaborParams& p, const FieldGeometry& geom) {
  if (!(p.sf_cpd >= kGaborMinSfCpd && p.sf_cpd <= kGaborMaxSfCpd)) {
    throw ConfigError("Gabor SF " + std::to_string(p.sf_cpd) + " cpd outside [0.5, 11.3]");
  }
  if (p.sf_cpd >= geom.nyquist_cpd()) {
    throw ConfigError("Gabor SF " + std::to_string(p.sf_cpd) + " cpd is at or above Nyquist");
  }
  if (!(p.nx > 0.0 && p.ny > 0.0)) throw ConfigError("Gabor envelope widths must be positive");
  if (!std::isfinite(p.theta) || !std::isfinite(p.phase)) {
    throw ConfigError("Gabor orientation and phase must be finite");
  }
  const int k = p.kernel_px == 0 ? auto_gabor_kernel_px(p, geom) : p.kernel_px;
  check_odd(k, "Gabor");
  const double sigma_across = p.nx / p.sf_cpd * geom.px_per_deg();
  if (sigma_across > kGaborContainmentLimit * k) {
    throw ConfigError("Gabor envelope (sigma " + std::to_string(sigma_across) +
                      " px) is not contained in a " + std::to_string(k) + " px kernel");
  }
}

std::pair<Kernel, Kernel> gabor_pair(const GaborParams& p, const FieldGeometry& geom) {
  validate(p, geom);
  const int k = p.kernel_px == 0 ? auto_gabor_kernel_px(p, geom) : p.kernel_px;
  const int half = k / 2;
  const double sigma_u = p.nx / p.sf_cpd * geom.px_per_deg();
  const double sigma_v = p.ny / p.sf_cpd * geom.px_per_deg();
  const double freq = p.sf_cpd / geom.px_per_deg();  // cycles per pixel
  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);

  std::vector<double> even(static_cast<std::size_t>(k) * k);
  std::vector<double> odd(even.size());
  for (int r = 0; r < k; ++r) {
    const double y = r - half;
    for (int col = 0; col < k; ++col) {
      const double x = col - half;
      const double u = -x * s + y * c;  // across the stripes
      const double v = x * c + y * s;   // along the stripes
      const double env =
          std::exp(-0.5 * (u * u / (sigma_u * sigma_u) + v * v / (sigma_v * sigma_v)));
      const double arg = 2.0 * kPi * freq * u + p.phase;
      const std::size_t i = static_cast<std::size_t>(r) * k + col;
      even[i] = env * std::cos(arg);
      odd[i] = env * std::sin(arg);
    }
  }
  auto normalize = [](std::vector<double>& w) {
    const double n = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    if (!(n > 0.0)) throw ComputeError("Gabor kernel has zero energy");
    for (double& v : w) v /= n;
  };
  normalize(even);
  normalize(odd);
  return {Kernel(k, k, std::move(even), KernelKind::gabor_even),
          Kernel(k, k, std::move(odd), KernelKind::gabor_odd)};
}

}  // namespace evfront
