// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/lab/population.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "evfront/error.hpp"

namespace evfront::lab {

GratingSpec matched_grating(const vone::GaborUnit& unit, double sf_cpd, double contrast) {
  GratingSpec g;
  g.orientation = unit.params.theta;
  g.sf_cpd = sf_cpd;
  g.contrast = contrast;
  return g;
}

PopulationSummary population_sf_stats(const vone::GaborBank& bank, const retina::RetinaBlock* retina,
                                      const FieldGeometry& geom) {
  if (bank.size() == 0) throw ConfigError("empty Gabor bank");
  PopulationSummary s;
  s.grid = sf_grid();
  s.histogram.assign(s.grid.size(), 0);
  s.optimal_sf.reserve(bank.size());
  for (std::size_t i = 0; i < bank.size(); ++i) {
    const auto& unit = bank.units()[i];
    const TuningCurve curve = sf_tuning(vone_probe(bank, i, retina), metric_for(unit.cell_type), geom, 1.0,
                                        matched_grating(unit, 1.0), "unit:" + std::to_string(i));
    const double best = optimal_sf(curve);
    s.optimal_sf.push_back(best);
    const auto bin = std::find(s.grid.begin(), s.grid.end(), best) - s.grid.begin();
    ++s.histogram[static_cast<std::size_t>(bin)];
  }
  s.mean_optimal_sf = std::accumulate(s.optimal_sf.begin(), s.optimal_sf.end(), 0.0) /
                      static_cast<double>(s.optimal_sf.size());
  std::vector<double> sorted = s.optimal_sf;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  s.median_optimal_sf = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return s;
}

}  // namespace evfront::lab
