// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "evfront/conv.hpp"
#include "evfront/error.hpp"
#include "evfront/geometry.hpp"
#include "evfront/kernel.hpp"

namespace evfront {
namespace {

const FieldGeometry kGeom{2.0, 64};

double kernel_sum(const Kernel& k) {
  double s = 0.0;
  for (double w : k.weights()) s += w;
  return s;
}

Plane random_plane(int h, int w, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Plane p(h, w);
  for (double& v : p.data()) v = u(rng);
  return p;
}

// Direct dense cross-correlation with reflect padding, written independently
// of the library's fast paths.
Plane reference_conv(const Plane& in, const Kernel& k, int stride) {
  const int oh = (in.height() + stride - 1) / stride;
  const int ow = (in.width() + stride - 1) / stride;
  Plane out(oh, ow);
  const int ch = k.height() / 2;
  const int cw = k.width() / 2;
  auto reflect = [](int i, int n) {
    if (i < 0) return -i;
    if (i >= n) return 2 * (n - 1) - i;
    return i;
  };
  for (int r = 0; r < oh; ++r) {
    for (int c = 0; c < ow; ++c) {
      double acc = 0.0;
      for (int kr = 0; kr < k.height(); ++kr) {
        for (int kc = 0; kc < k.width(); ++kc) {
          acc += k.at(kr, kc) *
                 in.at(reflect(r * stride + kr - ch, in.height()), reflect(c * stride + kc - cw, in.width()));
        }
      }
      out.at(r, c) = acc;
    }
  }
  return out;
}

TEST(FieldGeometry, PixelsPerDegree) {
  EXPECT_DOUBLE_EQ(make_field(2.0, 64).px_per_deg(), 32.0);
  EXPECT_DOUBLE_EQ(make_field(8.0, 224).px_per_deg(), 28.0);
  EXPECT_DOUBLE_EQ(make_field(2.0, 64).nyquist_cpd(), 16.0);
}

TEST(FieldGeometry, RejectsDegenerateFields) {
  EXPECT_THROW(make_field(2.0, 0), GeometryError);
  EXPECT_THROW(make_field(0.0, 64), GeometryError);
  EXPECT_THROW(make_field(-1.0, 64), GeometryError);
  EXPECT_THROW(make_field(std::nan(""), 64), GeometryError);
}

TEST(GaussianKernel, UnitySumOverRandomParameters) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> radius(0.01, 3.0);
  std::uniform_int_distribution<int> half(0, 45);
  for (int trial = 0; trial < 200; ++trial) {
    const Kernel k = gaussian_kernel(radius(rng), 2 * half(rng) + 1, kGeom);
    EXPECT_NEAR(kernel_sum(k), 1.0, 1e-6);
    EXPECT_NEAR(k.sum(), 1.0, 1e-6);
  }
}

TEST(GaussianKernel, SinglePixelKernelIsOne) {
  const Kernel k = gaussian_kernel(0.5, 1, kGeom);
  ASSERT_EQ(k.weights().size(), 1u);
  EXPECT_DOUBLE_EQ(k.weights()[0], 1.0);
}

TEST(GaussianKernel, OneOverERadius) {
  const Kernel k = gaussian_kernel(0.72, 65, kGeom);
  const double center = k.at(32, 32);
  double max = 0.0;
  for (double w : k.weights()) max = std::max(max, w);
  EXPECT_DOUBLE_EQ(center, max);
  // 0.72 deg at 32 px/deg is 23.04 px; evaluate the closed form one pixel off that radius.
  const double r_px = 23.0;
  const double expected = center * std::exp(-std::pow(r_px / (0.72 * 32.0), 2));
  EXPECT_NEAR(k.at(32, 32 + 23), expected, 1e-12);
  EXPECT_NEAR(k.at(32, 32 + 23) / center, std::exp(-1.0), 0.01);
}

TEST(GaussianKernel, RejectsInvalidSizes) {
  EXPECT_THROW(gaussian_kernel(0.1, 4, kGeom), ConfigError);
  EXPECT_THROW(gaussian_kernel(0.1, 0, kGeom), ConfigError);
  EXPECT_THROW(gaussian_kernel(0.0, 5, kGeom), ConfigError);
}

TEST(DoGKernel, UnitySumOverRandomParameters) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rc(0.01, 0.2);
  std::uniform_real_distribution<double> factor(1.5, 8.0);
  std::uniform_real_distribution<double> ratio(0.01, 0.95);
  std::uniform_int_distribution<int> half(3, 32);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = rc(rng);
    const DoGParams p{c, c * factor(rng), ratio(rng), 2 * half(rng) + 1};
    EXPECT_NEAR(kernel_sum(dog_kernel(p, kGeom)), 1.0, 1e-6);
  }
}

TEST(DoGKernel, VanishingRatioApproachesCenterGaussian) {
  const DoGParams p{0.03, 0.18, 1e-12, 21};
  const Kernel dog = dog_kernel(p, kGeom);
  const Kernel center = gaussian_kernel(0.03, 21, kGeom);
  for (std::size_t i = 0; i < dog.weights().size(); ++i) {
    EXPECT_NEAR(dog.weights()[i], center.weights()[i], 1e-11);
  }
}

TEST(DoGKernel, RejectsInvalidParameters) {
  EXPECT_THROW(dog_kernel({0.18, 0.03, 0.55, 21}, kGeom), ConfigError);
  EXPECT_THROW(dog_kernel({0.03, 0.18, 1.0, 21}, kGeom), ConfigError);
  EXPECT_THROW(dog_kernel({0.03, 0.18, 0.0, 21}, kGeom), ConfigError);
  EXPECT_THROW(dog_kernel({0.03, 0.18, 0.55, 20}, kGeom), ConfigError);
}

TEST(DoGKernel, MidgetDiscreteSpectrumPeaksNearAnalyticArgmax) {
  const DoGParams p{};
  const Kernel k = dog_kernel(p, kGeom);
  // Brute-force DFT amplitude along the horizontal frequency axis.
  auto dft_amp = [&](double f_cpd) {
    const double w = 2.0 * std::numbers::pi * f_cpd / kGeom.px_per_deg();
    double re = 0.0;
    double im = 0.0;
    for (int r = 0; r < k.height(); ++r) {
      for (int c = 0; c < k.width(); ++c) {
        const double x = c - k.width() / 2;
        re += k.at(r, c) * std::cos(w * x);
        im -= k.at(r, c) * std::sin(w * x);
      }
    }
    return std::hypot(re, im);
  };
  double best_f = 0.0;
  double best_a = -1.0;
  double best_analytic_f = 0.0;
  double best_analytic = -1.0;
  for (double f = 0.5; f <= 8.0; f += 0.01) {
    if (const double a = dft_amp(f); a > best_a) best_a = a, best_f = f;
    if (const double a = dog_analytic_spectrum(p, f); a > best_analytic) best_analytic = a, best_analytic_f = f;
  }
  EXPECT_NEAR(best_analytic_f, 3.1, 0.1);
  EXPECT_NEAR(best_f, best_analytic_f, 0.2);
}

TEST(GaborKernel, ParityAtZeroPhase) {
  for (double theta : {0.0, 0.4, 1.3, 2.7}) {
    const GaborParams p{theta, 3.0, 0.0, 0.5, 0.8, 0};
    const auto [even, odd] = gabor_pair(p, kGeom);
    const int h = even.height();
    const int w = even.width();
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        EXPECT_NEAR(even.at(r, c), even.at(h - 1 - r, w - 1 - c), 1e-12);
        EXPECT_NEAR(odd.at(r, c), -odd.at(h - 1 - r, w - 1 - c), 1e-12);
      }
    }
  }
}

TEST(GaborKernel, UnitL2Norm) {
  const auto [even, odd] = gabor_pair({0.7, 4.0, 1.0, 0.4, 0.6, 0}, kGeom);
  double se = 0.0;
  double so = 0.0;
  for (double v : even.weights()) se += v * v;
  for (double v : odd.weights()) so += v * v;
  EXPECT_NEAR(se, 1.0, 1e-12);
  EXPECT_NEAR(so, 1.0, 1e-12);
}

TEST(GaborKernel, QuadratureOverTwelvePhases) {
  const GaborParams p{0.6, 3.0, 0.0, 0.5, 0.7, 0};
  const auto [even, odd] = gabor_pair(p, kGeom);
  const double ppd = kGeom.px_per_deg();
  std::vector<double> energy;
  for (int k = 0; k < 12; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / 12.0;
    Plane g(64, 64);
    for (int r = 0; r < 64; ++r) {
      for (int c = 0; c < 64; ++c) {
        const double x = (c - 32) / ppd;
        const double y = (r - 32) / ppd;
        const double u = -x * std::sin(p.theta) + y * std::cos(p.theta);
        g.at(r, c) = std::sin(2.0 * std::numbers::pi * p.sf_cpd * u + phi);
      }
    }
    const double re = conv2d_at(g.view(), even, 32, 32);
    const double ro = conv2d_at(g.view(), odd, 32, 32);
    energy.push_back(re * re + ro * ro);
  }
  const auto [lo, hi] = std::minmax_element(energy.begin(), energy.end());
  EXPECT_GT(*lo, 0.0);
  EXPECT_LT((*hi - *lo) / *hi, 0.02);
}

TEST(GaborKernel, SfBoundsAndContainment) {
  EXPECT_NO_THROW(gabor_pair({0.0, 11.3, 0.0, 0.4, 0.4, 0}, kGeom));
  EXPECT_NO_THROW(gabor_pair({0.0, 0.5, 0.0, 0.1, 0.1, 0}, kGeom));
  EXPECT_THROW(gabor_pair({0.0, 11.4, 0.0, 0.4, 0.4, 0}, kGeom), ConfigError);
  EXPECT_THROW(gabor_pair({0.0, 0.4, 0.0, 0.4, 0.4, 0}, kGeom), ConfigError);
  // A 0.5 cpd carrier with a wide envelope cannot fit in a 9 px kernel.
  EXPECT_THROW(gabor_pair({0.0, 0.5, 0.0, 0.7, 0.7, 9}, kGeom), ConfigError);
  EXPECT_EQ(auto_gabor_kernel_px({0.0, 0.5, 0.0, 0.7, 2.1, 0}, kGeom), kGaborMaxAutoKernelPx);
  EXPECT_EQ(auto_gabor_kernel_px({0.0, 8.0, 0.0, 0.1, 0.1, 0}, kGeom) % 2, 1);
}

TEST(Conv2d, ConstantPlaneIsPreserved) {
  const Plane in(64, 64, 0.37);
  for (const Kernel& k : {gaussian_kernel(0.72, 65, kGeom), dog_kernel({}, kGeom), gaussian_kernel(0.1, 7, kGeom)}) {
    const Plane out = conv2d(in.view(), k);
    for (double v : out.data()) EXPECT_NEAR(v, 0.37, 1e-12);
  }
}

TEST(Conv2d, OutputShapes) {
  const Plane in(64, 64, 1.0);
  const Kernel k = dog_kernel({}, kGeom);
  const Plane s1 = conv2d(in.view(), k, 1);
  EXPECT_EQ(s1.height(), 64);
  EXPECT_EQ(s1.width(), 64);
  const Plane s2 = conv2d(in.view(), k, 2);
  EXPECT_EQ(s2.height(), 32);
  EXPECT_EQ(s2.width(), 32);
  EXPECT_EQ(strided_size(63, 2), 32);
}

TEST(Conv2d, MatchesReferenceForSeparableAndDenseKernels) {
  std::mt19937_64 rng(3);
  const Plane in = random_plane(40, 40, rng);
  const Kernel sep = gaussian_kernel(0.2, 15, kGeom);
  const auto [even, odd] = gabor_pair({0.9, 3.0, 0.3, 0.4, 0.9, 0}, kGeom);
  for (const Kernel* k : {&sep, &even, &odd}) {
    for (int stride : {1, 2, 3}) {
      const Plane got = conv2d(in.view(), *k, stride);
      const Plane want = reference_conv(in, *k, stride);
      ASSERT_EQ(got.height(), want.height());
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got.data()[i], want.data()[i], 1e-12);
      for (int r = 0; r < got.height(); r += 5) {
        EXPECT_NEAR(conv2d_at(in.view(), *k, r * stride, r * stride), want.at(r, r), 1e-12);
      }
    }
  }
}

TEST(Conv2d, ShiftCovarianceAwayFromBorders) {
  std::mt19937_64 rng(5);
  const Plane in = random_plane(64, 64, rng);
  Plane shifted(64, 64);
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) shifted.at(r, c) = in.at(r, (c + 60) % 64);
  }
  const Kernel k = gaussian_kernel(0.1, 11, kGeom);
  const Plane a = conv2d(in.view(), k);
  const Plane b = conv2d(shifted.view(), k);
  for (int r = 8; r < 56; ++r) {
    for (int c = 12; c < 56; ++c) EXPECT_NEAR(b.at(r, c), a.at(r, c - 4), 1e-12);
  }
}

TEST(Conv2d, ReflectPaddingWithoutEdgeRepeat) {
  EXPECT_EQ(reflect_index(-1, 5), 1);
  EXPECT_EQ(reflect_index(-2, 5), 2);
  EXPECT_EQ(reflect_index(5, 5), 3);
  EXPECT_EQ(reflect_index(2, 5), 2);
  const Plane tiny(4, 4, 1.0);
  EXPECT_THROW(conv2d(tiny.view(), gaussian_kernel(0.5, 9, kGeom)), ShapeError);
}

}  // namespace
}  // namespace evfront
