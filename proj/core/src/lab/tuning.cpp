// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/lab/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evfront/conv.hpp"
#include "evfront/error.hpp"

namespace evfront::lab {

namespace {

Plane luminance(const ImageTensor& frame) {
  Plane out(frame.height(), frame.width());
  auto dst = out.data();
  for (int c = 0; c < frame.channels(); ++c) {
    auto src = frame.channel_span(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  for (double& v : dst) v /= frame.channels();
  return out;
}

TuningPoint measure(const std::vector<ImageTensor>& frames, const Probe& probe, Metric metric, double stimulus) {
  const auto m = fourier_metrics(record(frames, probe, metric));
  return {stimulus, m.f0, m.f1, m.select(metric)};
}

}  // namespace

ResponseSeries record_center(std::span<const ImageTensor> frames, const ForwardFn& forward, int channel,
                             Metric metric) {
  ResponseSeries s{{}, metric};
  s.values.reserve(frames.size());
  for (const auto& f : frames) {
    const ImageTensor out = forward(f);
    if (channel < 0 || channel >= out.channels()) {
      throw ShapeError("recorded channel " + std::to_string(channel) + " out of range for " +
                       std::to_string(out.channels()) + " channels");
    }
    s.values.push_back(out.at(channel, out.height() / 2, out.width() / 2));
  }
  return s;
}

ResponseSeries record(std::span<const ImageTensor> frames, const Probe& probe, Metric metric) {
  ResponseSeries s{{}, metric};
  s.values.reserve(frames.size());
  for (const auto& f : frames) s.values.push_back(probe(f));
  return s;
}

Probe retina_probe(const retina::RetinaBlock& block, int channel, RetinaProbePoint point) {
  if (channel < 0 || channel >= retina::kNumChannels) throw ShapeError("retina channel out of range");
  if (point == RetinaProbePoint::full) {
    return [&block, channel](const ImageTensor& frame) {
      const Plane p = block.forward_channel(frame, channel);
      return p.at(p.height() / 2, p.width() / 2);
    };
  }
  return [&block, channel](const ImageTensor& frame) {
    const Plane p = block.opponent_dog(vone::center_pixels(frame), channel);
    return p.at(p.height() / 2, p.width() / 2);
  };
}

Probe dog_probe(const DoGParams& params, const FieldGeometry& geom) {
  return [kernel = dog_kernel(params, geom)](const ImageTensor& frame) {
    const Plane lum = luminance(frame);
    return conv2d_at(lum.view(), kernel, lum.height() / 2, lum.width() / 2);
  };
}

Probe vone_probe(const vone::GaborBank& bank, std::size_t unit, const retina::RetinaBlock* retina) {
  if (unit >= bank.size()) throw ShapeError("unit index out of range");
  const int ch = bank.units()[unit].input_channel;
  const int out = bank.center_output_index();
  if (retina != nullptr) {
    if (bank.input_channels() != retina::kNumChannels) {
      throw ConfigError("bank behind a RetinaBlock must be sampled for 4 input channels");
    }
    return [&bank, retina, unit, ch, out](const ImageTensor& frame) {
      const Plane p = retina->forward_channel(frame, ch);
      return bank.response_at(unit, p.view(), out, out);
    };
  }
  return [&bank, unit, ch, out](const ImageTensor& frame) {
    if (ch >= frame.channels()) throw ShapeError("unit input channel exceeds frame channels");
    const auto src = frame.channel_span(ch);
    std::vector<double> centered(src.begin(), src.end());
    for (double& v : centered) v = (v - 0.5) / 0.5;
    return bank.response_at(unit, PlaneView{centered, frame.height(), frame.width()}, out, out);
  };
}

Metric metric_for(vone::CellType type) { return type == vone::CellType::complex ? Metric::F0 : Metric::F1; }

std::string_view to_string(Axis a) { return a == Axis::sf ? "sf" : "contrast"; }

std::vector<double> TuningCurve::stimuli() const {
  std::vector<double> v;
  v.reserve(points.size());
  for (const auto& p : points) v.push_back(p.stimulus);
  return v;
}

std::vector<double> TuningCurve::responses() const {
  std::vector<double> v;
  v.reserve(points.size());
  for (const auto& p : points) v.push_back(p.response);
  return v;
}

TuningCurve sf_tuning(const Probe& probe, Metric metric, const FieldGeometry& geom, double contrast,
                      GratingSpec base, std::string unit_id) {
  TuningCurve curve{Axis::sf, metric, std::move(unit_id), contrast, {}};
  base.contrast = contrast;
  for (double sf : sf_grid()) {
    base.sf_cpd = sf;
    curve.points.push_back(measure(grating_frames(base, geom), probe, metric, sf));
  }
  return curve;
}

TuningCurve contrast_curve(const Probe& probe, Metric metric, const FieldGeometry& geom, double sf_cpd,
                           GratingSpec base, std::string unit_id) {
  TuningCurve curve{Axis::contrast, metric, std::move(unit_id), sf_cpd, {}};
  base.sf_cpd = sf_cpd;
  for (double c : contrast_grid()) {
    base.contrast = c;
    curve.points.push_back(measure(grating_frames(base, geom), probe, metric, c));
  }
  return curve;
}

double optimal_sf(const TuningCurve& curve) {
  if (curve.axis != Axis::sf) throw ComputeError("optimal SF needs an SF tuning curve");
  if (curve.points.empty()) throw ComputeError("optimal SF of an empty curve");
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (curve.points[i].response > curve.points[best].response) best = i;
  }
  return curve.points[best].stimulus;
}

Bandwidth sf_bandwidth(const TuningCurve& curve) {
  if (curve.axis != Axis::sf) throw ComputeError("bandwidth needs an SF tuning curve");
  const auto& p = curve.points;
  if (p.size() < 2) throw ComputeError("bandwidth needs at least two points");
  std::size_t peak = 0;
  double lowest = p[0].response;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i].response > p[peak].response) peak = i;
    lowest = std::min(lowest, p[i].response);
  }
  const double top = p[peak].response;
  if (!(top > 0.0) || top == lowest) throw ComputeError("bandwidth undefined for a flat curve");
  const double half = top / 2.0;

  auto crossing = [&](std::size_t above, std::size_t below) {
    const double t = (half - p[below].response) / (p[above].response - p[below].response);
    const double la = std::log(p[above].stimulus);
    const double lb = std::log(p[below].stimulus);
    return std::exp(lb + t * (la - lb));
  };

  Bandwidth bw;
  bw.open_low = true;
  bw.f_low = p.front().stimulus;
  for (std::size_t i = peak; i > 0; --i) {
    if (p[i - 1].response <= half) {
      bw.f_low = crossing(i, i - 1);
      bw.open_low = false;
      break;
    }
  }
  bw.open_high = true;
  bw.f_high = p.back().stimulus;
  for (std::size_t i = peak; i + 1 < p.size(); ++i) {
    if (p[i + 1].response <= half) {
      bw.f_high = crossing(i, i + 1);
      bw.open_high = false;
      break;
    }
  }
  bw.octaves = std::log2(bw.f_high / bw.f_low);
  return bw;
}

}  // namespace evfront::lab
