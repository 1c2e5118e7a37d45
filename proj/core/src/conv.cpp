// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/conv.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "evfront/error.hpp"

namespace evfront {

namespace {

void check_fits(const PlaneView& input, const Kernel& kernel, int stride) {
  if (stride < 1) throw ShapeError("stride must be >= 1");
  if (input.height < 1 || input.width < 1) throw ShapeError("empty input plane");
  const int pad_r = kernel.height() / 2;
  const int pad_c = kernel.width() / 2;
  if (pad_r >= input.height || pad_c >= input.width) {
    throw ShapeError("kernel " + std::to_string(kernel.height()) + "x" +
                     std::to_string(kernel.width()) + " is larger than the reflect-padded " +
                     std::to_string(input.height) + "x" + std::to_string(input.width) + " input");
  }
}

// Reflect-padded copy of one row into `out` (length width + 2 * pad).
void pad_row(std::span<const double> row, int pad, std::vector<double>& out) {
  const int n = static_cast<int>(row.size());
  out.resize(row.size() + 2 * static_cast<std::size_t>(pad));
  for (int i = -pad; i < n + pad; ++i) out[i + pad] = row[reflect_index(i, n)];
}

Plane conv_separable(const PlaneView& in, const Kernel& kernel, int stride) {
  const auto& f = *kernel.separable();
  const int pr = kernel.height() / 2;
  const int pc = kernel.width() / 2;
  const int out_h = strided_size(in.height, stride);
  const int out_w = strided_size(in.width, stride);
  Plane out(out_h, out_w);

  std::vector<double> column_pass(in.width);
  std::vector<double> padded;
  for (int i = 0; i < out_h; ++i) {
    const int r0 = i * stride;
    std::fill(column_pass.begin(), column_pass.end(), 0.0);
    for (int t = 0; t < kernel.height(); ++t) {
      const double w = f.rows[t];
      const double* src = in.data.data() + static_cast<std::size_t>(reflect_index(r0 + t - pr, in.height)) * in.width;
      for (int c = 0; c < in.width; ++c) column_pass[c] += w * src[c];
    }
    pad_row(column_pass, pc, padded);
    double* dst = out.data().data() + static_cast<std::size_t>(i) * out_w;
    if (stride == 1) {
      for (int t = 0; t < kernel.width(); ++t) {
        const double w = f.cols[t];
        const double* src = padded.data() + t;
        for (int j = 0; j < out_w; ++j) dst[j] += w * src[j];
      }
    } else {
      for (int j = 0; j < out_w; ++j) {
        const double* src = padded.data() + static_cast<std::size_t>(j) * stride;
        double acc = 0.0;
        for (int t = 0; t < kernel.width(); ++t) acc += f.cols[t] * src[t];
        dst[j] = acc;
      }
    }
  }
  return out;
}

Plane conv_dense(const PlaneView& in, const Kernel& kernel, int stride) {
  const int pr = kernel.height() / 2;
  const int pc = kernel.width() / 2;
  const int padded_w = in.width + 2 * pc;
  const int padded_h = in.height + 2 * pr;
  std::vector<double> padded(static_cast<std::size_t>(padded_h) * padded_w);
  for (int r = 0; r < padded_h; ++r) {
    const int src_r = reflect_index(r - pr, in.height);
    for (int c = 0; c < padded_w; ++c) {
      padded[static_cast<std::size_t>(r) * padded_w + c] = in.at(src_r, reflect_index(c - pc, in.width));
    }
  }

  const int out_h = strided_size(in.height, stride);
  const int out_w = strided_size(in.width, stride);
  Plane out(out_h, out_w);
  const auto w = kernel.weights();
  for (int i = 0; i < out_h; ++i) {
    for (int j = 0; j < out_w; ++j) {
      double acc = 0.0;
      for (int t = 0; t < kernel.height(); ++t) {
        const double* src = padded.data() + static_cast<std::size_t>(i * stride + t) * padded_w + j * stride;
        const double* wr = w.data() + static_cast<std::size_t>(t) * kernel.width();
        for (int u = 0; u < kernel.width(); ++u) acc += wr[u] * src[u];
      }
      out.at(i, j) = acc;
    }
  }
  return out;
}

}  // namespace

int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

Plane conv2d(const PlaneView& input, const Kernel& kernel, int stride) {
  check_fits(input, kernel, stride);
  if (kernel.separable()) return conv_separable(input, kernel, stride);
  return conv_dense(input, kernel, stride);
}

double conv2d_at(const PlaneView& input, const Kernel& kernel, int row, int col) {
  check_fits(input, kernel, 1);
  if (row < 0 || row >= input.height || col < 0 || col >= input.width) {
    throw ShapeError("conv2d_at position outside the input plane");
  }
  const int pr = kernel.height() / 2;
  const int pc = kernel.width() / 2;
  double acc = 0.0;
  for (int t = 0; t < kernel.height(); ++t) {
    const int r = reflect_index(row + t - pr, input.height);
    for (int u = 0; u < kernel.width(); ++u) {
      acc += kernel.at(t, u) * input.at(r, reflect_index(col + u - pc, input.width));
    }
  }
  return acc;
}

}  // namespace evfront
