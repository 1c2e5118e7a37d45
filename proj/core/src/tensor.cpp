// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evfront/error.hpp"

namespace evfront {

namespace {

void check_dims(int channels, int height, int width) {
  if (channels < 1 || height < 1 || width < 1) {
    throw ShapeError("tensor dimensions must be positive, got " + std::to_string(channels) + "x" +
                     std::to_string(height) + "x" + std::to_string(width));
  }
}

}  // namespace

Plane::Plane(int height, int width, double fill)
    : height_(height), width_(width), data_(static_cast<std::size_t>(height) * width, fill) {
  check_dims(1, height, width);
}

Plane::Plane(int height, int width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
  check_dims(1, height, width);
  if (data_.size() != static_cast<std::size_t>(height) * width) {
    throw ShapeError("plane data length does not match " + std::to_string(height) + "x" +
                     std::to_string(width));
  }
}

ImageTensor::ImageTensor(int channels, int height, int width, double fill)
    : channels_(channels),
      height_(height),
      width_(width),
      data_(static_cast<std::size_t>(channels) * height * width, fill) {
  check_dims(channels, height, width);
}

ImageTensor ImageTensor::from_data(int channels, int height, int width, std::vector<double> data) {
  check_dims(channels, height, width);
  if (data.size() != static_cast<std::size_t>(channels) * height * width) {
    throw ShapeError("tensor data length " + std::to_string(data.size()) + " does not match " +
                     std::to_string(channels) + "x" + std::to_string(height) + "x" +
                     std::to_string(width));
  }
  ImageTensor t;
  t.channels_ = channels;
  t.height_ = height;
  t.width_ = width;
  t.data_ = std::move(data);
  if (!t.all_finite()) {
    throw ComputeError("tensor contains non-finite values");
  }
  return t;
}

ImageTensor ImageTensor::from_planes(std::span<const Plane> planes) {
  if (planes.empty()) {
    throw ShapeError("cannot build a tensor from zero planes");
  }
  ImageTensor t(static_cast<int>(planes.size()), planes[0].height(), planes[0].width());
  for (std::size_t c = 0; c < planes.size(); ++c) {
    t.set_channel(static_cast<int>(c), planes[c]);
  }
  return t;
}

std::span<const double> ImageTensor::channel_span(int c) const {
  if (c < 0 || c >= channels_) {
    throw ShapeError("channel " + std::to_string(c) + " out of range for " +
                     std::to_string(channels_) + " channels");
  }
  return std::span<const double>(data_).subspan(c * plane_size(), plane_size());
}

std::span<double> ImageTensor::channel_span(int c) {
  if (c < 0 || c >= channels_) {
    throw ShapeError("channel " + std::to_string(c) + " out of range for " +
                     std::to_string(channels_) + " channels");
  }
  return std::span<double>(data_).subspan(c * plane_size(), plane_size());
}

void ImageTensor::set_channel(int c, const Plane& plane) {
  if (plane.height() != height_ || plane.width() != width_) {
    throw ShapeError("plane shape does not match tensor");
  }
  auto dst = channel_span(c);
  std::copy(plane.data().begin(), plane.data().end(), dst.begin());
}

bool ImageTensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace evfront
