// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "evfront/lab/tuning.hpp"

namespace evfront::lab {

struct PopulationSummary {
  std::vector<double> optimal_sf;     // per unit, bank order
  std::vector<double> grid;           // histogram bin centres (the SF grid)
  std::vector<int> histogram;         // units per grid point
  double mean_optimal_sf = 0.0;
  double median_optimal_sf = 0.0;
};

/// SF tuning of every unit at its own preferred orientation (F1 for simple,
/// F0 for complex cells), optionally behind a RetinaBlock. Units are probed
/// in index order so the result is deterministic.
PopulationSummary population_sf_stats(const vone::GaborBank& bank, const retina::RetinaBlock* retina,
                                      const FieldGeometry& geom);

/// Stimulus used to probe a unit: its orientation, default aperture.
GratingSpec matched_grating(const vone::GaborUnit& unit, double sf_cpd, double contrast = 1.0);

}  // namespace evfront::lab
