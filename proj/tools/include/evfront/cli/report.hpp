// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "evfront/lab/contrast_fit.hpp"
#include "evfront/lab/population.hpp"

namespace evfront::cli {

/// stimulus,F0,F1,metric_used
std::string tuning_csv(const lab::TuningCurve& curve);

nlohmann::json tuning_json(const lab::TuningCurve& curve, const std::optional<lab::ContrastFit>& fit);

nlohmann::json contrast_fit_json(const lab::ContrastFit& fit);

/// Line plot with markers; log-scaled x axis for SF curves.
std::string tuning_svg(const lab::TuningCurve& curve, const std::string& title);

/// unit,cell_type,input_channel,orientation_deg,sf_param_cpd,optimal_sf_cpd
std::string population_csv(const vone::GaborBank& bank, const lab::PopulationSummary& s);

/// sf_cpd,count[,count_with_retina]
std::string histogram_csv(const lab::PopulationSummary& without, const lab::PopulationSummary* with);

nlohmann::json population_json(const lab::PopulationSummary& s);

}  // namespace evfront::cli
