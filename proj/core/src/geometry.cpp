// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/geometry.hpp"

#include <cmath>
#include <string>

#include "evfront/error.hpp"

namespace evfront {

FieldGeometry::FieldGeometry(double fov_deg, int resolution_px)
    : fov_deg_(fov_deg), resolution_px_(resolution_px) {
  if (!(std::isfinite(fov_deg) && fov_deg > 0.0)) {
    throw GeometryError("field of view must be positive, got " + std::to_string(fov_deg));
  }
  if (resolution_px < 1) {
    throw GeometryError("resolution must be at least 1 px, got " + std::to_string(resolution_px));
  }
  px_per_deg_ = static_cast<double>(resolution_px) / fov_deg;
}

FieldGeometry make_field(double fov_deg, int resolution_px) {
  return FieldGeometry(fov_deg, resolution_px);
}

}  // namespace evfront
