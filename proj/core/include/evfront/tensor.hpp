// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace evfront {

/// Read-only view of one row-major image plane.
struct PlaneView {
  std::span<const double> data;
  int height = 0;
  int width = 0;

  double at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
};

/// Owning single-channel plane.
class Plane {
 public:
  Plane() = default;
  Plane(int height, int width, double fill = 0.0);
  Plane(int height, int width, std::vector<double> data);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return data_.size(); }

  double& at(int row, int col) { return data_[static_cast<std::size_t>(row) * width_ + col]; }
  double at(int row, int col) const { return data_[static_cast<std::size_t>(row) * width_ + col]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  PlaneView view() const { return {data_, height_, width_}; }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

/// Dense channel-major tensor (C x H x W). Values must be finite.
class ImageTensor {
 public:
  ImageTensor() = default;
  ImageTensor(int channels, int height, int width, double fill = 0.0);

  /// Validates length and finiteness; throws ShapeError / ComputeError.
  static ImageTensor from_data(int channels, int height, int width, std::vector<double> data);
  static ImageTensor from_planes(std::span<const Plane> planes);

  int channels() const { return channels_; }
  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t plane_size() const { return static_cast<std::size_t>(height_) * width_; }

  double& at(int c, int row, int col) { return data_[index(c, row, col)]; }
  double at(int c, int row, int col) const { return data_[index(c, row, col)]; }

  std::span<const double> channel_span(int c) const;
  std::span<double> channel_span(int c);
  PlaneView channel(int c) const { return {channel_span(c), height_, width_}; }
  void set_channel(int c, const Plane& plane);

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  bool all_finite() const;

  friend bool operator==(const ImageTensor&, const ImageTensor&) = default;

 private:
  std::size_t index(int c, int row, int col) const {
    return (static_cast<std::size_t>(c) * height_ + row) * width_ + col;
  }

  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

}  // namespace evfront
