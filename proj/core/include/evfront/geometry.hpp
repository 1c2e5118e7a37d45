// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace evfront {

/// Maps degrees of visual angle onto image pixels. The image is square.
class FieldGeometry {
 public:
  FieldGeometry(double fov_deg, int resolution_px);

  double fov_deg() const { return fov_deg_; }
  int resolution_px() const { return resolution_px_; }
  double px_per_deg() const { return px_per_deg_; }

  /// Highest representable spatial frequency (cycles per degree).
  double nyquist_cpd() const { return px_per_deg_ / 2.0; }

  double to_px(double deg) const { return deg * px_per_deg_; }

  friend bool operator==(const FieldGeometry&, const FieldGeometry&) = default;

 private:
  double fov_deg_;
  int resolution_px_;
  double px_per_deg_;
};

/// Throws GeometryError unless fov_deg > 0 and resolution_px >= 1.
FieldGeometry make_field(double fov_deg, int resolution_px);

}  // namespace evfront
