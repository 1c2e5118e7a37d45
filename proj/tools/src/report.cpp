// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "evfront/cli/io.hpp"

namespace evfront::cli {

using nlohmann::json;

std::string tuning_csv(const lab::TuningCurve& curve) {
  std::string out = "stimulus,F0,F1,metric_used\n";
  const std::string metric(lab::to_string(curve.metric));
  for (const auto& p : curve.points) {
    out += format_number(p.stimulus) + "," + format_number(p.f0) + "," + format_number(p.f1) + "," + metric + "\n";
  }
  return out;
}

json contrast_fit_json(const lab::ContrastFit& fit) {
  return {{"saturation_onset_c0", fit.saturation_onset_c0},
          {"linear_slope", fit.linear_slope},
          {"log_gain", fit.log_gain},
          {"residual_rmse", fit.residual},
          {"saturates", fit.saturates},
          {"degenerate", fit.degenerate}};
}

json tuning_json(const lab::TuningCurve& curve, const std::optional<lab::ContrastFit>& fit) {
  json points = json::array();
  for (const auto& p : curve.points) {
    points.push_back({{"stimulus", p.stimulus}, {"F0", p.f0}, {"F1", p.f1}, {"response", p.response}});
  }
  json j = {
      {"unit_id", curve.unit_id},
      {"axis", std::string(lab::to_string(curve.axis))},
      {"metric", std::string(lab::to_string(curve.metric))},
      {curve.axis == lab::Axis::sf ? "fixed_contrast" : "fixed_sf_cpd", curve.fixed_value},
      {"points", points},
  };
  if (curve.axis == lab::Axis::sf && !curve.points.empty()) {
    j["optimal_sf_cpd"] = lab::optimal_sf(curve);
  }
  if (fit) j["contrast_fit"] = contrast_fit_json(*fit);
  return j;
}

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string tuning_svg(const lab::TuningCurve& curve, const std::string& title) {
  constexpr double kW = 480, kH = 320, kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;
  const bool log_x = curve.axis == lab::Axis::sf;
  auto xval = [&](double s) { return log_x ? std::log10(s) : s; };

  double xmin = 0, xmax = 1, ymax = 0;
  if (!curve.points.empty()) {
    xmin = xval(curve.points.front().stimulus);
    xmax = xval(curve.points.back().stimulus);
    for (const auto& p : curve.points) ymax = std::max(ymax, p.response);
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= 0) ymax = 1;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  auto px = [&](double s) { return kLeft + (xval(s) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double r) { return kTop + ph - std::max(r, 0.0) / ymax * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
    << kW << " " << kH << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fixed(kW / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << title
    << "</text>\n";
  // Axes.
  o << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop + ph) << "\" x2=\"" << fixed(kLeft + pw)
    << "\" y2=\"" << fixed(kTop + ph) << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(kLeft) << "\" y2=\""
    << fixed(kTop + ph) << "\" stroke=\"black\"/>\n";
  // X ticks: decades on log axes, fifths otherwise.
  std::vector<double> ticks;
  if (log_x) {
    for (double t : {0.1, 0.3, 1.0, 3.0, 10.0}) {
      if (xval(t) >= xmin - 1e-9 && xval(t) <= xmax + 1e-9) ticks.push_back(t);
    }
  } else {
    for (int i = 0; i <= 5; ++i) ticks.push_back(xmin + (xmax - xmin) * i / 5.0);
  }
  for (double t : ticks) {
    o << "<line x1=\"" << fixed(px(t)) << "\" y1=\"" << fixed(kTop + ph) << "\" x2=\"" << fixed(px(t))
      << "\" y2=\"" << fixed(kTop + ph + 4) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fixed(px(t)) << "\" y=\"" << fixed(kTop + ph + 16) << "\" text-anchor=\"middle\">"
      << format_number(std::round(t * 100) / 100) << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double r = ymax * i / 4.0;
    o << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(py(r) + 4) << "\" text-anchor=\"end\">"
      << fixed(r) << "</text>\n";
  }
  o << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kH - 12) << "\" text-anchor=\"middle\">"
    << (log_x ? "spatial frequency (cpd, log scale)" : "contrast") << "</text>\n";
  o << "<text x=\"14\" y=\"" << fixed(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
    << fixed(kTop + ph / 2) << ")\">response (" << lab::to_string(curve.metric) << ")</text>\n";
  // Curve and markers.
  if (!curve.points.empty()) {
    o << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      if (i > 0) o << ' ';
      o << fixed(px(curve.points[i].stimulus)) << ',' << fixed(py(curve.points[i].response));
    }
    o << "\"/>\n";
    for (const auto& p : curve.points) {
      o << "<circle cx=\"" << fixed(px(p.stimulus)) << "\" cy=\"" << fixed(py(p.response))
        << "\" r=\"2.5\" fill=\"#1f4e9c\"/>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

std::string population_csv(const vone::GaborBank& bank, const lab::PopulationSummary& s) {
  std::string out = "unit,cell_type,input_channel,orientation_deg,sf_param_cpd,optimal_sf_cpd\n";
  for (std::size_t i = 0; i < bank.size(); ++i) {
    const auto& u = bank.units()[i];
    out += std::to_string(i) + "," + std::string(vone::to_string(u.cell_type)) + "," +
           std::to_string(u.input_channel) + "," + format_number(u.params.theta * 180.0 / std::numbers::pi) +
           "," + format_number(u.params.sf_cpd) + "," + format_number(s.optimal_sf.at(i)) + "\n";
  }
  return out;
}

std::string histogram_csv(const lab::PopulationSummary& without, const lab::PopulationSummary* with) {
  std::string out = with != nullptr ? "sf_cpd,count,count_with_retina\n" : "sf_cpd,count\n";
  for (std::size_t i = 0; i < without.grid.size(); ++i) {
    out += format_number(without.grid[i]) + "," + std::to_string(without.histogram[i]);
    if (with != nullptr) out += "," + std::to_string(with->histogram.at(i));
    out += "\n";
  }
  return out;
}

json population_json(const lab::PopulationSummary& s) {
  return {{"n_units", s.optimal_sf.size()},
          {"mean_optimal_sf_cpd", s.mean_optimal_sf},
          {"median_optimal_sf_cpd", s.median_optimal_sf},
          {"grid_cpd", s.grid},
          {"histogram", s.histogram}};
}

}  // namespace evfront::cli
