// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/retina.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evfront/conv.hpp"
#include "evfront/error.hpp"

namespace evfront::retina {

namespace {

Plane weighted_sum(const ImageTensor& t, const std::array<double, 3>& w) {
  Plane out(t.height(), t.width());
  auto dst = out.data();
  for (int c = 0; c < 3; ++c) {
    if (w[c] == 0.0) continue;
    auto src = t.channel_span(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += w[c] * src[i];
  }
  return out;
}

void require_rgb(const ImageTensor& t, const char* what) {
  if (t.channels() != 3) {
    throw ShapeError(std::string(what) + " expects 3 channels, got " + std::to_string(t.channels()));
  }
}

LightAdapted light_adapt_with(const ImageTensor& image, const Kernel& pool, double epsilon) {
  require_rgb(image, "light adaptation");
  // Luminance and its pooled mean are formed relative to a reference value so
  // that achromatic and spatially uniform inputs cancel exactly in floating
  // point; algebraically this is the plain channel mean and unity-sum pool.
  Plane luminance(image.height(), image.width());
  {
    auto r = image.channel_span(0);
    auto g = image.channel_span(1);
    auto b = image.channel_span(2);
    auto dst = luminance.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = r[i] + ((g[i] - r[i]) + (b[i] - r[i])) / 3.0;
  }
  const double ref = luminance.data()[0];
  Plane deviation = luminance;
  for (double& v : deviation.data()) v -= ref;
  Plane mean_lum = conv2d(deviation.view(), pool, 1);
  for (double& v : mean_lum.data()) v += ref;
  ImageTensor adapted(3, image.height(), image.width());
  const auto m = mean_lum.data();
  for (int c = 0; c < 3; ++c) {
    auto src = image.channel_span(c);
    auto dst = adapted.channel_span(c);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      dst[i] = (src[i] - m[i]) / std::max(m[i], epsilon);
    }
  }
  return {std::move(adapted), std::move(mean_lum)};
}

Plane opponent_dog_with(const ImageTensor& adapted, const OpponencySpec& spec, double ratio,
                        const Kernel& center, const Kernel& surround) {
  require_rgb(adapted, "opponent DoG");
  const Plane cs = weighted_sum(adapted, spec.center_weights);
  const Plane ss = spec.surround_weights == spec.center_weights ? cs
                                                                 : weighted_sum(adapted, spec.surround_weights);
  Plane out = conv2d(cs.view(), center, 1);
  const Plane s = conv2d(ss.view(), surround, 1);
  auto o = out.data();
  auto sv = s.data();
  const double gain = 1.0 / (1.0 - ratio);
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = (o[i] - ratio * sv[i]) * gain;
  return out;
}

Plane contrast_normalize_with(const PlaneView& x, double c50, const Kernel& pool) {
  std::vector<double> sq(x.data.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = x.data[i] * x.data[i];
  const Plane energy = conv2d(PlaneView{sq, x.height, x.width}, pool, 1);
  Plane out(x.height, x.width);
  auto o = out.data();
  auto e = energy.data();
  for (std::size_t i = 0; i < o.size(); ++i) {
    o[i] = x.data[i] / (c50 + std::sqrt(std::max(e[i], 0.0)));
  }
  return out;
}

}  // namespace

std::string_view to_string(Opponency o) {
  switch (o) {
    case Opponency::red_green: return "red_green";
    case Opponency::green_red: return "green_red";
    case Opponency::blue_yellow: return "blue_yellow";
    case Opponency::achromatic: return "achromatic";
  }
  return "unknown";
}

Opponency opponency_from_string(std::string_view name) {
  for (auto o : {Opponency::red_green, Opponency::green_red, Opponency::blue_yellow, Opponency::achromatic}) {
    if (to_string(o) == name) return o;
  }
  throw ConfigError("unknown opponency '" + std::string(name) + "'");
}

OpponencySpec default_opponency(Opponency name) {
  switch (name) {
    case Opponency::red_green: return {name, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    case Opponency::green_red: return {name, {0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}};
    case Opponency::blue_yellow: return {name, {0.0, 0.0, 1.0}, {0.5, 0.5, 0.0}};
    case Opponency::achromatic: break;
  }
  return {Opponency::achromatic, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
}

void validate(const OpponencySpec& spec) {
  for (const auto* w : {&spec.center_weights, &spec.surround_weights}) {
    double total = 0.0;
    for (double v : *w) {
      if (!(v >= 0.0)) throw ConfigError("opponency weights must be non-negative");
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw ConfigError("opponency weights for " + std::string(to_string(spec.name)) + " must sum to 1");
    }
  }
}

void validate(const RetinaBlockConfig& cfg) {
  const auto& la = cfg.light_adapt;
  if (!(la.pool_radius_deg > 0.0)) throw ConfigError("light-adaptation pool radius must be positive");
  if (la.kernel_px < 1 || la.kernel_px % 2 == 0) throw ConfigError("light-adaptation kernel must be odd");
  if (!(la.epsilon > 0.0)) throw ConfigError("light-adaptation epsilon must be positive");
  validate(cfg.midget_dog);
  validate(cfg.parasol_dog);
  const auto& cn = cfg.contrast_norm;
  if (!(cn.c50 > 0.0)) throw ConfigError("c50 must be positive");
  if (!(cn.pool_radius_deg > 0.0)) throw ConfigError("contrast pool radius must be positive");
  if (cn.kernel_px < 1 || cn.kernel_px % 2 == 0) throw ConfigError("contrast pool kernel must be odd");
  if (std::abs(cfg.parasol_dog.rs_deg - cn.pool_radius_deg) > 1e-12) {
    throw ConfigError("contrast-normalization pool radius must equal the parasol surround radius");
  }
  for (const auto& spec : cfg.opponency) validate(spec);
}

LightAdapted light_adapt(const ImageTensor& image, const LightAdaptParams& p, const FieldGeometry& geom) {
  if (!(p.epsilon > 0.0)) throw ConfigError("light-adaptation epsilon must be positive");
  return light_adapt_with(image, gaussian_kernel(p.pool_radius_deg, p.kernel_px, geom), p.epsilon);
}

Plane opponent_dog(const ImageTensor& adapted, const OpponencySpec& spec, const DoGParams& dog,
                   const FieldGeometry& geom) {
  validate(spec);
  validate(dog);
  return opponent_dog_with(adapted, spec, dog.surround_to_center_ratio,
                           gaussian_kernel(dog.rc_deg, dog.kernel_px, geom),
                           gaussian_kernel(dog.rs_deg, dog.kernel_px, geom));
}

Plane contrast_normalize(const PlaneView& x_dog, const ContrastNormParams& p, const FieldGeometry& geom) {
  if (!(p.c50 > 0.0)) throw ConfigError("c50 must be positive");
  return contrast_normalize_with(x_dog, p.c50, gaussian_kernel(p.pool_radius_deg, p.kernel_px, geom));
}

RetinaBlock::RetinaBlock(RetinaBlockConfig cfg)
    : cfg_((validate(cfg), std::move(cfg))),
      la_pool_(gaussian_kernel(cfg_.light_adapt.pool_radius_deg, cfg_.light_adapt.kernel_px, cfg_.geometry)),
      midget_center_(gaussian_kernel(cfg_.midget_dog.rc_deg, cfg_.midget_dog.kernel_px, cfg_.geometry)),
      midget_surround_(gaussian_kernel(cfg_.midget_dog.rs_deg, cfg_.midget_dog.kernel_px, cfg_.geometry)),
      parasol_center_(gaussian_kernel(cfg_.parasol_dog.rc_deg, cfg_.parasol_dog.kernel_px, cfg_.geometry)),
      parasol_surround_(gaussian_kernel(cfg_.parasol_dog.rs_deg, cfg_.parasol_dog.kernel_px, cfg_.geometry)),
      cn_pool_(gaussian_kernel(cfg_.contrast_norm.pool_radius_deg, cfg_.contrast_norm.kernel_px, cfg_.geometry)) {}

void RetinaBlock::check_input(const ImageTensor& image) const {
  require_rgb(image, "RetinaBlock");
  const int n = cfg_.geometry.resolution_px();
  if (image.height() != n || image.width() != n) {
    throw GeometryError("RetinaBlock configured for " + std::to_string(n) + "x" + std::to_string(n) +
                        " input, got " + std::to_string(image.height()) + "x" + std::to_string(image.width()));
  }
}

LightAdapted RetinaBlock::light_adapt(const ImageTensor& image) const {
  return light_adapt_with(image, la_pool_, cfg_.light_adapt.epsilon);
}

Plane RetinaBlock::opponent_dog(const ImageTensor& adapted, int channel) const {
  if (channel < 0 || channel >= kNumChannels) throw ShapeError("retina channel out of range");
  if (channel == parasol) {
    return opponent_dog_with(adapted, cfg_.opponency[channel], cfg_.parasol_dog.surround_to_center_ratio,
                             parasol_center_, parasol_surround_);
  }
  return opponent_dog_with(adapted, cfg_.opponency[channel], cfg_.midget_dog.surround_to_center_ratio,
                           midget_center_, midget_surround_);
}

Plane RetinaBlock::contrast_normalize(const PlaneView& x_dog) const {
  return contrast_normalize_with(x_dog, cfg_.contrast_norm.c50, cn_pool_);
}

Plane RetinaBlock::forward_channel(const ImageTensor& image, int channel) const {
  check_input(image);
  const LightAdapted la = light_adapt(image);
  Plane x = opponent_dog(la.adapted, channel);
  if (channel == parasol) return contrast_normalize(x.view());
  return x;
}

ImageTensor RetinaBlock::forward(const ImageTensor& image) const {
  check_input(image);
  const LightAdapted la = light_adapt(image);
  ImageTensor out(kNumChannels, image.height(), image.width());
  for (int ch = 0; ch < kNumChannels; ++ch) {
    Plane x = opponent_dog(la.adapted, ch);
    if (ch == parasol) x = contrast_normalize(x.view());
    out.set_channel(ch, x);
  }
  return out;
}

}  // namespace evfront::retina
