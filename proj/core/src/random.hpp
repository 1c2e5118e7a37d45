// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace evfront::detail {

/// mt19937_64 with a fixed mapping to doubles, so draws are identical across
/// standard libraries (std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  int below(int n) {
    const auto v = static_cast<int>(uniform() * n);
    return v < n ? v : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace evfront::detail
