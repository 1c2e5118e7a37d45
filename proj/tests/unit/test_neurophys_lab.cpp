// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "evfront/error.hpp"
#include "evfront/lab/contrast_fit.hpp"
#include "evfront/lab/fourier.hpp"
#include "evfront/lab/grating.hpp"
#include "evfront/lab/population.hpp"
#include "evfront/lab/tuning.hpp"

namespace evfront::lab {
namespace {

const FieldGeometry kGeom{2.0, 64};
constexpr double kPi = std::numbers::pi;

std::pair<double, double> in_aperture_range(const ImageTensor& f, const GratingSpec& s) {
  double lo = 1e300;
  double hi = -1e300;
  for (int r = 0; r < f.height(); ++r) {
    for (int c = 0; c < f.width(); ++c) {
      if (aperture_weight(s, kGeom, r, c) < 1.0) continue;
      lo = std::min(lo, f.at(0, r, c));
      hi = std::max(hi, f.at(0, r, c));
    }
  }
  return {lo, hi};
}

TuningCurve synthetic_curve(Axis axis, const std::vector<double>& x, const std::vector<double>& y) {
  TuningCurve c;
  c.axis = axis;
  for (std::size_t i = 0; i < x.size(); ++i) c.points.push_back({x[i], y[i], 0.0, y[i]});
  return c;
}

TEST(Grids, SfAndContrastGrids) {
  const auto sf = sf_grid();
  ASSERT_EQ(sf.size(), 24u);
  EXPECT_DOUBLE_EQ(sf.front(), 0.1);
  EXPECT_NEAR(sf.back(), 9.3, 1e-12);
  for (std::size_t i = 1; i < sf.size(); ++i) {
    EXPECT_NEAR(std::log(sf[i] / sf[i - 1]), std::log(93.0) / 23.0, 1e-12);
  }
  const auto c = contrast_grid();
  ASSERT_EQ(c.size(), 24u);
  EXPECT_EQ(c.front(), 0.0);
  EXPECT_EQ(c.back(), 1.0);
}

TEST(Grating, ZeroContrastIsUniformMeanGray) {
  GratingSpec s;
  s.contrast = 0.0;
  for (const auto& f : grating_frames(s, kGeom)) {
    for (double v : f.data()) EXPECT_EQ(v, 0.5);
  }
}

TEST(Grating, FullContrastSpansUnitRange) {
  GratingSpec s;
  s.sf_cpd = 2.0;
  s.contrast = 1.0;
  s.diameter_deg = 1.5;
  double lo = 1.0;
  double hi = 0.0;
  const auto frames = grating_frames(s, kGeom);
  ASSERT_EQ(frames.size(), 12u);
  for (const auto& f : frames) {
    const auto [l, h] = in_aperture_range(f, s);
    lo = std::min(lo, l);
    hi = std::max(hi, h);
  }
  EXPECT_NEAR(lo, 0.0, 1e-9);
  EXPECT_NEAR(hi, 1.0, 1e-9);
  EXPECT_NEAR(measured_contrast(frames, s, kGeom), 1.0, 1e-6);
}

TEST(Grating, OppositeFramesAreInAntiphase) {
  GratingSpec s;
  s.sf_cpd = 3.3;
  s.contrast = 0.7;
  s.orientation = 0.8;
  const auto frames = grating_frames(s, kGeom);
  for (int k = 0; k < 6; ++k) {
    for (int r = 0; r < 64; ++r) {
      for (int c = 0; c < 64; ++c) {
        if (aperture_weight(s, kGeom, r, c) < 1.0) continue;
        EXPECT_NEAR(frames[k].at(1, r, c) + frames[k + 6].at(1, r, c), 1.0, 1e-12);
      }
    }
  }
}

TEST(Grating, OutsideHardApertureIsMeanGray) {
  GratingSpec s;
  s.diameter_deg = 0.5;
  const auto f = grating_frames(s, kGeom).front();
  EXPECT_EQ(f.at(0, 0, 0), 0.5);
  EXPECT_EQ(aperture_weight(s, kGeom, 0, 0), 0.0);
  EXPECT_EQ(aperture_weight(s, kGeom, 32, 32), 1.0);
}

TEST(Grating, RaisedCosineAndFullField) {
  GratingSpec s;
  s.aperture = Aperture::raised_cosine;
  s.diameter_deg = 1.0;
  s.taper_deg = 0.2;
  // 0.45 deg from centre lies inside the 0.3-0.5 deg taper.
  const double w = aperture_weight(s, kGeom, 32, 32 + static_cast<int>(0.45 * 32));
  EXPECT_GT(w, 0.0);
  EXPECT_LT(w, 1.0);
  s.aperture = Aperture::full_field;
  EXPECT_EQ(aperture_weight(s, kGeom, 0, 0), 1.0);
}

TEST(Grating, ContrastClosureAcrossSamples) {
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      GratingSpec s;
      s.sf_cpd = 0.5 + 0.9 * i;
      s.contrast = 0.05 + 0.1 * j;
      s.orientation = 0.3 * i;
      EXPECT_NEAR(measured_contrast(grating_frames(s, kGeom), s, kGeom), s.contrast, 1e-6);
    }
  }
}

TEST(Grating, ValidationErrors) {
  GratingSpec s;
  s.sf_cpd = 16.0;
  EXPECT_THROW(validate(s, kGeom), StimulusError);
  s = GratingSpec{};
  s.contrast = 1.2;
  EXPECT_THROW(validate(s, kGeom), StimulusError);
  s = GratingSpec{};
  s.n_frames = 10;
  EXPECT_THROW(validate(s, kGeom), StimulusError);
  s = GratingSpec{};
  s.mean_luminance = 0.8;
  EXPECT_THROW(validate(s, kGeom), StimulusError);
}

TEST(Fourier, PureToneCases) {
  ResponseSeries s;
  for (int k = 0; k < 12; ++k) s.values.push_back(2.0 + 3.0 * std::cos(2.0 * kPi * k / 12.0));
  const auto m = fourier_metrics(s);
  EXPECT_NEAR(m.f0, 2.0, 1e-9);
  EXPECT_NEAR(m.f1, 3.0, 1e-9);

  ResponseSeries constant{std::vector<double>(12, 0.7), Metric::F0};
  EXPECT_NEAR(fourier_metrics(constant).f0, 0.7, 1e-12);
  EXPECT_NEAR(fourier_metrics(constant).f1, 0.0, 1e-12);

  ResponseSeries second;
  for (int k = 0; k < 12; ++k) second.values.push_back(std::cos(4.0 * kPi * k / 12.0));
  EXPECT_NEAR(fourier_metrics(second).f1, 0.0, 1e-9);
}

TEST(Fourier, InvariantToDriftPhaseRotation) {
  std::vector<double> v;
  for (int k = 0; k < 12; ++k) v.push_back(1.0 + std::sin(2.0 * kPi * k / 12.0 + 0.4) + 0.3 * std::cos(k * 1.7));
  const auto ref = fourier_metrics({v, Metric::F1});
  for (int shift = 1; shift < 12; ++shift) {
    std::vector<double> r(v.size());
    std::rotate_copy(v.begin(), v.begin() + shift, v.end(), r.begin());
    const auto m = fourier_metrics({r, Metric::F1});
    EXPECT_NEAR(m.f0, ref.f0, 1e-9);
    EXPECT_NEAR(m.f1, ref.f1, 1e-9);
  }
}

TEST(Fourier, NeedsTwoSamples) { EXPECT_THROW(fourier_metrics({{1.0}, Metric::F1}), ComputeError); }

TEST(Recording, ConstantFramesThroughRetinaGiveZeroSeries) {
  const retina::RetinaBlock block{retina::RetinaBlockConfig{}};
  const std::vector<ImageTensor> frames(12, ImageTensor(3, 64, 64, 0.4));
  for (int ch = 0; ch < retina::kNumChannels; ++ch) {
    const auto s = record(frames, retina_probe(block, ch), Metric::F1);
    ASSERT_EQ(s.values.size(), 12u);
    for (double v : s.values) EXPECT_EQ(v, 0.0);
  }
}

TEST(Recording, CommutesWithLuminanceScaling) {
  const retina::RetinaBlock block{retina::RetinaBlockConfig{}};
  GratingSpec s;
  s.sf_cpd = 2.0;
  s.contrast = 0.6;
  const auto frames = grating_frames(s, kGeom);
  std::vector<ImageTensor> dim = frames;
  for (auto& f : dim) {
    for (double& v : f.data()) v *= 0.3;
  }
  for (int ch = 0; ch < retina::kNumChannels; ++ch) {
    const auto a = record(frames, retina_probe(block, ch), Metric::F1);
    const auto b = record(dim, retina_probe(block, ch), Metric::F1);
    for (std::size_t k = 0; k < a.values.size(); ++k) EXPECT_NEAR(a.values[k], b.values[k], 1e-9);
  }
}

TEST(Recording, RecordCenterReadsMiddlePixel) {
  const retina::RetinaBlock block{retina::RetinaBlockConfig{}};
  GratingSpec s;
  const auto frames = grating_frames(s, kGeom);
  const auto a = record_center(frames, [&](const ImageTensor& f) { return block.forward(f); }, retina::parasol);
  const auto b = record(frames, retina_probe(block, retina::parasol), Metric::F1);
  EXPECT_EQ(a.values, b.values);
}

TEST(Tuning, OptimalSfPicksFirstMaximum) {
  const auto grid = sf_grid();
  std::vector<double> decreasing(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) decreasing[i] = 10.0 - static_cast<double>(i);
  EXPECT_EQ(optimal_sf(synthetic_curve(Axis::sf, grid, decreasing)), grid.front());
  std::vector<double> plateau(grid.size(), 1.0);
  EXPECT_EQ(optimal_sf(synthetic_curve(Axis::sf, grid, plateau)), grid.front());
}

TEST(Tuning, BandwidthOfTriangleInLogSf) {
  // Peak 1 at 2 cpd, half max at 1 and 4 cpd, linear in log2(SF).
  std::vector<double> x;
  std::vector<double> y;
  for (double l = -2.0; l <= 4.0 + 1e-9; l += 0.25) {
    x.push_back(std::exp2(l));
    y.push_back(std::max(0.0, 1.0 - 0.5 * std::abs(l - 1.0)));
  }
  const Bandwidth bw = sf_bandwidth(synthetic_curve(Axis::sf, x, y));
  EXPECT_NEAR(bw.octaves, 2.0, 1e-9);
  EXPECT_NEAR(bw.f_low, 1.0, 1e-9);
  EXPECT_NEAR(bw.f_high, 4.0, 1e-9);
  EXPECT_FALSE(bw.open_low);
  EXPECT_FALSE(bw.open_high);
}

TEST(Tuning, OpenEndedAndFlatBandwidth) {
  const auto grid = sf_grid();
  std::vector<double> rising(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rising[i] = 1.0 + 0.01 * static_cast<double>(i);
  const Bandwidth bw = sf_bandwidth(synthetic_curve(Axis::sf, grid, rising));
  EXPECT_TRUE(bw.open_low);
  EXPECT_TRUE(bw.open_high);
  EXPECT_THROW(sf_bandwidth(synthetic_curve(Axis::sf, grid, std::vector<double>(grid.size(), 2.0))),
               ComputeError);
}

TEST(Tuning, ComplexCellBandwidthIsFinite) {
  const vone::GaborBank bank = vone::sample_gfb(vone::GFBConfig{}, kGeom, 3);
  const std::size_t i = 300;
  const auto& unit = bank.units()[i];
  const TuningCurve curve = sf_tuning(vone_probe(bank, i), metric_for(unit.cell_type), kGeom, 1.0,
                                      matched_grating(unit, 1.0));
  const Bandwidth bw = sf_bandwidth(curve);
  EXPECT_GT(bw.octaves, 0.0);
  EXPECT_TRUE(std::isfinite(bw.octaves));
}

TEST(Tuning, DoGOnlyCurveTracksAnalyticSpectrum) {
  const DoGParams p{};
  GratingSpec base;
  base.aperture = Aperture::full_field;
  const TuningCurve curve = sf_tuning(dog_probe(p, kGeom), Metric::F1, kGeom, 1.0, base);
  for (const auto& pt : curve.points) {
    if (pt.stimulus >= 0.8 * kGeom.nyquist_cpd()) continue;
    // Grating amplitude is mean * contrast = 0.5.
    const double want = 0.5 * dog_analytic_spectrum(p, pt.stimulus);
    EXPECT_NEAR(pt.response / want, 1.0, 0.05) << pt.stimulus;
  }
}

TEST(Tuning, ContrastCurveStartsAtZero) {
  const retina::RetinaBlock block{retina::RetinaBlockConfig{}};
  for (int ch : {retina::midget_rg, retina::parasol}) {
    const TuningCurve c = contrast_curve(retina_probe(block, ch), Metric::F1, kGeom, 1.0);
    ASSERT_EQ(c.points.size(), 24u);
    EXPECT_NEAR(c.points.front().response, 0.0, 1e-12);
    EXPECT_GT(c.points.back().response, 0.0);
  }
}

TEST(Tuning, ParasolContrastResponseIsMonotone) {
  const retina::RetinaBlock block{retina::RetinaBlockConfig{}};
  for (double sf : {0.5, 1.0, 2.0}) {
    const TuningCurve c = contrast_curve(retina_probe(block, retina::parasol), Metric::F1, kGeom, sf);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      EXPECT_GE(c.points[i].response, c.points[i - 1].response - 1e-12) << "sf " << sf << " point " << i;
    }
  }
}

TEST(Tuning, DoGOnlyF1IsLinearInContrast) {
  const TuningCurve c = contrast_curve(dog_probe(DoGParams{}, kGeom), Metric::F1, kGeom, 2.0);
  const double gain = c.points.back().response / c.points.back().stimulus;
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    EXPECT_NEAR(c.points[i].response / (gain * c.points[i].stimulus), 1.0, 0.01);
  }
}

TEST(Tuning, OptimalSfInvariantToPositiveRescaling) {
  const retina::RetinaBlock block{retina::RetinaBlockConfig{}};
  TuningCurve c = sf_tuning(retina_probe(block, retina::parasol), Metric::F1, kGeom);
  const double best = optimal_sf(c);
  for (double k : {1e-6, 0.37, 12.0, 1e6}) {
    TuningCurve scaled = c;
    for (auto& p : scaled.points) p.response *= k;
    EXPECT_EQ(optimal_sf(scaled), best);
  }
}

TEST(ContrastFit, RecoversSyntheticOnset) {
  const auto c = contrast_grid();
  std::vector<double> r;
  for (double x : c) r.push_back(log_saturation_model(x, 4.0, 0.3));
  const ContrastFit fit = fit_log_saturation(synthetic_curve(Axis::contrast, c, r));
  EXPECT_NEAR(fit.saturation_onset_c0, 0.3, 0.02);
  EXPECT_NEAR(fit.linear_slope, 4.0, 0.05);
  EXPECT_TRUE(fit.saturates);
  EXPECT_LT(fit.residual, 1e-3);
}

TEST(ContrastFit, LinearDataPinsOnsetAtUpperBoundary) {
  const auto c = contrast_grid();
  std::vector<double> r;
  for (double x : c) r.push_back(1.7 * x);
  const ContrastFit fit = fit_log_saturation(synthetic_curve(Axis::contrast, c, r));
  EXPECT_DOUBLE_EQ(fit.saturation_onset_c0, 1.0);
  EXPECT_FALSE(fit.saturates);
  EXPECT_NEAR(fit.linear_slope, 1.7, 1e-9);
}

TEST(ContrastFit, DegenerateAndInvalidInputs) {
  const auto c = contrast_grid();
  const ContrastFit zero = fit_log_saturation(synthetic_curve(Axis::contrast, c, std::vector<double>(c.size(), 0.0)));
  EXPECT_TRUE(zero.degenerate);
  EXPECT_THROW(fit_log_saturation(synthetic_curve(Axis::contrast, {0.1, 0.2}, {1.0, 2.0})), ComputeError);
  std::vector<double> neg(c.size(), 1.0);
  neg[3] = -1.0;
  EXPECT_THROW(fit_log_saturation(synthetic_curve(Axis::contrast, c, neg)), ComputeError);
  EXPECT_THROW(fit_log_saturation(synthetic_curve(Axis::sf, c, neg)), ComputeError);
}

TEST(ContrastFit, ParasolSaturatesBeforeMidget) {
  const retina::RetinaBlock block{retina::RetinaBlockConfig{}};
  const ContrastFit parasol =
      fit_log_saturation(contrast_curve(retina_probe(block, retina::parasol), Metric::F1, kGeom, 1.0));
  const ContrastFit midget =
      fit_log_saturation(contrast_curve(retina_probe(block, retina::midget_rg), Metric::F1, kGeom, 1.0));
  EXPECT_TRUE(parasol.saturates);
  EXPECT_LT(parasol.saturation_onset_c0, 1.0);
  EXPECT_LT(parasol.saturation_onset_c0, midget.saturation_onset_c0);
  EXPECT_GT(parasol.linear_slope, midget.linear_slope);
}

TEST(Population, SmallBankHistogramSumsToUnits) {
  vone::GFBConfig cfg;
  cfg.n_units = 10;
  cfg.n_simple = 5;
  cfg.n_complex = 5;
  const vone::GaborBank bank = vone::sample_gfb(cfg, kGeom, 3);
  const PopulationSummary s = population_sf_stats(bank, nullptr, kGeom);
  ASSERT_EQ(s.optimal_sf.size(), 10u);
  EXPECT_EQ(std::accumulate(s.histogram.begin(), s.histogram.end(), 0), 10);
  EXPECT_EQ(s.grid, sf_grid());
  std::vector<double> sorted = s.optimal_sf;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_DOUBLE_EQ(s.median_optimal_sf, 0.5 * (sorted[4] + sorted[5]));
}

TEST(Population, MatchedGratingFollowsUnitOrientation) {
  vone::GaborUnit u;
  u.params.theta = 1.2;
  const GratingSpec g = matched_grating(u, 3.0, 0.4);
  EXPECT_EQ(g.orientation, 1.2);
  EXPECT_EQ(g.sf_cpd, 3.0);
  EXPECT_EQ(g.contrast, 0.4);
}

}  // namespace
}  // namespace evfront::lab
