// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/vone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "evfront/conv.hpp"
#include "evfront/error.hpp"
#include "random.hpp"

namespace evfront::vone {

namespace {

void validate_table(const HistogramTable& t, const char* name) {
  if (t.edges.size() < 2 || t.weights.size() + 1 != t.edges.size()) {
    throw ConfigError(std::string(name) + " table needs n+1 edges for n weights");
  }
  for (std::size_t i = 1; i < t.edges.size(); ++i) {
    if (!(t.edges[i] > t.edges[i - 1])) {
      throw ConfigError(std::string(name) + " table edges must be strictly increasing");
    }
  }
  double total = 0.0;
  for (double w : t.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError(std::string(name) + " table weights must be >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw ConfigError(std::string(name) + " table has zero total weight");
}

// Inverse CDF of a piecewise-constant density, linear within each bin in the
// coordinate given by `to` / `from`.
template <typename To, typename From>
double sample_table(const HistogramTable& t, double u, To to, From from) {
  double total = 0.0;
  for (double w : t.weights) total += w;
  double target = u * total;
  for (std::size_t i = 0; i < t.weights.size(); ++i) {
    const double w = t.weights[i];
    if (w <= 0.0) continue;
    if (target < w || i + 1 == t.weights.size()) {
      const double frac = std::clamp(target / w, 0.0, 1.0);
      const double lo = to(t.edges[i]);
      const double hi = to(t.edges[i + 1]);
      return from(lo + frac * (hi - lo));
    }
    target -= w;
  }
  return t.edges.back();
}

// Restricts the SF histogram to [lo, hi], scaling partially covered bins by
// the fraction of their log-width that survives.
HistogramTable clip_sf_table(const HistogramTable& t, double lo, double hi) {
  HistogramTable out;
  for (std::size_t i = 0; i < t.weights.size(); ++i) {
    const double a = std::max(t.edges[i], lo);
    const double b = std::min(t.edges[i + 1], hi);
    if (!(b > a)) continue;
    const double frac = std::log(b / a) / std::log(t.edges[i + 1] / t.edges[i]);
    if (out.edges.empty() || out.edges.back() != a) {
      if (!out.edges.empty()) out.weights.push_back(0.0);
      out.edges.push_back(a);
    }
    out.edges.push_back(b);
    out.weights.push_back(t.weights[i] * frac);
  }
  return out;
}

double log_uniform(double lo, double hi, double u) {
  return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
}

Plane rectify(Plane p) {
  for (double& v : p.data()) v = std::max(v, 0.0);
  return p;
}

Plane energy(const Plane& even, const Plane& odd) {
  Plane out(even.height(), even.width());
  auto o = out.data();
  auto e = even.data();
  auto q = odd.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = std::sqrt(e[i] * e[i] + q[i] * q[i]);
  return out;
}

}  // namespace

std::string_view to_string(CellType t) { return t == CellType::simple ? "simple" : "complex"; }

CellType cell_type_from_string(std::string_view s) {
  if (s == "simple") return CellType::simple;
  if (s == "complex") return CellType::complex;
  throw ConfigError("unknown cell type '" + std::string(s) + "'");
}

void validate(const GFBConfig& cfg) {
  if (cfg.n_units < 1) throw ConfigError("GFB needs at least one unit");
  if (cfg.n_simple < 0 || cfg.n_complex < 0 || cfg.n_simple + cfg.n_complex != cfg.n_units) {
    throw ConfigError("n_simple + n_complex must equal n_units");
  }
  if (!(cfg.sf_min_cpd >= kGaborMinSfCpd && cfg.sf_max_cpd <= kGaborMaxSfCpd && cfg.sf_min_cpd < cfg.sf_max_cpd)) {
    throw ConfigError("GFB SF bounds must satisfy 0.5 <= min < max <= 11.3 cpd");
  }
  validate_table(cfg.orientation_deg, "orientation");
  validate_table(cfg.sf_cpd, "sf");
  if (!(cfg.sf_cpd.edges.front() > 0.0)) throw ConfigError("sf table edges must be positive");
  const auto clipped = clip_sf_table(cfg.sf_cpd, cfg.sf_min_cpd, cfg.sf_max_cpd);
  double w = 0.0;
  for (double v : clipped.weights) w += v;
  if (clipped.weights.empty() || !(w > 0.0)) throw ConfigError("sf table has no weight inside the SF bounds");
  const auto& e = cfg.envelope;
  if (!(e.nx_min > 0.0 && e.nx_min <= e.nx_max)) throw ConfigError("envelope nx range invalid");
  if (!(e.ny_ratio_min > 0.0 && e.ny_ratio_min <= e.ny_ratio_max)) throw ConfigError("envelope ny ratio range invalid");
  if (cfg.kernel_px < 0 || (cfg.kernel_px > 0 && cfg.kernel_px % 2 == 0)) {
    throw ConfigError("GFB kernel_px must be 0 (auto) or odd");
  }
  if (cfg.stride < 1) throw ConfigError("GFB stride must be >= 1");
}

GaborBank::GaborBank(std::vector<GaborUnit> units, FieldGeometry geometry, int stride, std::uint64_t seed,
                     int input_channels)
    : units_(std::move(units)), geometry_(geometry), stride_(stride), seed_(seed), input_channels_(input_channels) {
  if (stride < 1) throw ConfigError("GFB stride must be >= 1");
  if (input_channels < 1) throw ConfigError("GFB needs at least one input channel");
  kernels_.reserve(units_.size());
  for (const auto& u : units_) {
    if (u.input_channel < 0 || u.input_channel >= input_channels_) {
      throw ConfigError("unit input channel out of range");
    }
    kernels_.push_back(gabor_pair(u.params, geometry_));
  }
}

void GaborBank::check_input(std::size_t i, const ImageTensor& input) const {
  if (i >= units_.size()) throw ShapeError("unit index out of range");
  const int n = geometry_.resolution_px();
  if (input.height() != n || input.width() != n) {
    throw GeometryError("GaborBank configured for " + std::to_string(n) + " px input, got " +
                        std::to_string(input.height()) + "x" + std::to_string(input.width()));
  }
  if (units_[i].input_channel >= input.channels()) {
    throw ShapeError("unit reads channel " + std::to_string(units_[i].input_channel) + " but input has " +
                     std::to_string(input.channels()));
  }
}

Plane GaborBank::response(std::size_t i, const ImageTensor& input) const {
  check_input(i, input);
  const auto plane = input.channel(units_[i].input_channel);
  Plane even = conv2d(plane, kernels_[i].first, stride_);
  if (units_[i].cell_type == CellType::simple) return rectify(std::move(even));
  return energy(even, conv2d(plane, kernels_[i].second, stride_));
}

double GaborBank::response_at(std::size_t i, const ImageTensor& input, int row, int col) const {
  check_input(i, input);
  return response_at(i, input.channel(units_[i].input_channel), row, col);
}

double GaborBank::response_at(std::size_t i, const PlaneView& plane, int row, int col) const {
  if (i >= units_.size()) throw ShapeError("unit index out of range");
  const int n = geometry_.resolution_px();
  if (plane.height != n || plane.width != n) throw GeometryError("plane does not match bank geometry");
  const int r = row * stride_;
  const int c = col * stride_;
  const double e = conv2d_at(plane, kernels_[i].first, r, c);
  if (units_[i].cell_type == CellType::simple) return std::max(e, 0.0);
  const double o = conv2d_at(plane, kernels_[i].second, r, c);
  return std::sqrt(e * e + o * o);
}

int GaborBank::center_output_index() const {
  const int center = geometry_.resolution_px() / 2;
  const int out = strided_size(geometry_.resolution_px(), stride_);
  return std::min((center + stride_ / 2) / stride_, out - 1);
}

GaborBank sample_gfb(const GFBConfig& cfg, const FieldGeometry& geom, int input_channels) {
  validate(cfg);
  if (input_channels < 1) throw ConfigError("input_channels must be >= 1");
  const auto sf_table = clip_sf_table(cfg.sf_cpd, cfg.sf_min_cpd, cfg.sf_max_cpd);
  const auto identity = [](double v) { return v; };
  const auto log2f = [](double v) { return std::log2(v); };
  const auto exp2f = [](double v) { return std::exp2(v); };

  detail::Rng rng(cfg.seed);
  std::vector<GaborUnit> units;
  units.reserve(cfg.n_units);
  for (int i = 0; i < cfg.n_units; ++i) {
    GaborUnit u;
    double ori = sample_table(cfg.orientation_deg, rng.uniform(), identity, identity);
    if (ori < 0.0) ori += 180.0;
    u.params.theta = ori * std::numbers::pi / 180.0;
    const double sf = sample_table(sf_table, rng.uniform(), log2f, exp2f);
    u.params.sf_cpd = std::clamp(sf, cfg.sf_min_cpd, cfg.sf_max_cpd);
    u.params.phase = 2.0 * std::numbers::pi * rng.uniform();
    u.params.nx = log_uniform(cfg.envelope.nx_min, cfg.envelope.nx_max, rng.uniform());
    u.params.ny = u.params.nx * log_uniform(cfg.envelope.ny_ratio_min, cfg.envelope.ny_ratio_max, rng.uniform());
    u.params.kernel_px = cfg.kernel_px == 0 ? auto_gabor_kernel_px(u.params, geom) : cfg.kernel_px;
    u.cell_type = i < cfg.n_simple ? CellType::simple : CellType::complex;
    u.input_channel = rng.below(input_channels);
    units.push_back(u);
  }
  return GaborBank(std::move(units), geom, cfg.stride, cfg.seed, input_channels);
}

Plane unit_response(const GaborUnit& unit, const ImageTensor& input, const FieldGeometry& geom, int stride) {
  if (unit.input_channel < 0 || unit.input_channel >= input.channels()) {
    throw ShapeError("unit reads channel " + std::to_string(unit.input_channel) + " but input has " +
                     std::to_string(input.channels()));
  }
  const auto [even_k, odd_k] = gabor_pair(unit.params, geom);
  const auto plane = input.channel(unit.input_channel);
  Plane even = conv2d(plane, even_k, stride);
  if (unit.cell_type == CellType::simple) return rectify(std::move(even));
  return energy(even, conv2d(plane, odd_k, stride));
}

ImageTensor voneblock_forward(const ImageTensor& input, const GaborBank& bank) {
  const int n = bank.geometry().resolution_px();
  if (input.height() != n || input.width() != n) {
    throw GeometryError("VOneBlock configured for " + std::to_string(n) + " px input");
  }
  const int out = strided_size(n, bank.stride());
  ImageTensor result(static_cast<int>(bank.size()), out, out);
  for (std::size_t i = 0; i < bank.size(); ++i) {
    result.set_channel(static_cast<int>(i), bank.response(i, input));
  }
  return result;
}

ImageTensor evfront_forward(const ImageTensor& image, const retina::RetinaBlock& retina, const GaborBank& bank) {
  if (bank.input_channels() != retina::kNumChannels) {
    throw ConfigError("EV front-end needs a bank sampled for 4 input channels, got " +
                      std::to_string(bank.input_channels()));
  }
  if (!(bank.geometry() == retina.config().geometry)) {
    throw GeometryError("bank and RetinaBlock geometries differ");
  }
  return voneblock_forward(retina.forward(image), bank);
}

ImageTensor center_pixels(const ImageTensor& image) {
  ImageTensor out = image;
  for (double& v : out.data()) v = (v - 0.5) / 0.5;
  return out;
}

}  // namespace evfront::vone
