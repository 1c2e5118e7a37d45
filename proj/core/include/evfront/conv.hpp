// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "evfront/kernel.hpp"
#include "evfront/tensor.hpp"

namespace evfront {

/// Output side for a stride: ceil(input / stride).
constexpr int strided_size(int input, int stride) { return (input + stride - 1) / stride; }

/// Reflect an out-of-range index back into [0, n) without repeating the edge
/// sample (..., 2, 1, | 0, 1, ..., n-1, | n-2, ...).
int reflect_index(int i, int n);

/// Cross-correlation with reflective padding of kernel/2 on each side.
/// Output sample (i, j) is centred on input (i * stride, j * stride).
/// Throws ShapeError when the padding would exceed the input.
Plane conv2d(const PlaneView& input, const Kernel& kernel, int stride = 1);

/// One output sample of conv2d, centred on input (row, col).
double conv2d_at(const PlaneView& input, const Kernel& kernel, int row, int col);

}  // namespace evfront
