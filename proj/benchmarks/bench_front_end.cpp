// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "evfront/conv.hpp"
#include "evfront/lab/grating.hpp"
#include "evfront/lab/tuning.hpp"
#include "evfront/retina.hpp"
#include "evfront/vone.hpp"

namespace {

using namespace evfront;

const FieldGeometry kGeom{2.0, 64};

ImageTensor random_image(int channels) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ImageTensor img(channels, 64, 64);
  for (double& v : img.data()) v = u(rng);
  return img;
}

void BM_Conv2dSeparable(benchmark::State& state) {
  const ImageTensor img = random_image(1);
  const Kernel k = gaussian_kernel(0.72, static_cast<int>(state.range(0)), kGeom);
  for (auto _ : state) benchmark::DoNotOptimize(conv2d(img.channel(0), k));
}
BENCHMARK(BM_Conv2dSeparable)->Arg(21)->Arg(65)->Arg(85);

void BM_Conv2dDenseGabor(benchmark::State& state) {
  const ImageTensor img = random_image(1);
  const auto [even, odd] = gabor_pair({0.7, 2.0, 0.0, 0.5, 1.0, static_cast<int>(state.range(0))}, kGeom);
  for (auto _ : state) benchmark::DoNotOptimize(conv2d(img.channel(0), even, 2));
}
BENCHMARK(BM_Conv2dDenseGabor)->Arg(15)->Arg(31);

void BM_RetinaForward(benchmark::State& state) {
  const retina::RetinaBlock block{retina::RetinaBlockConfig{}};
  const ImageTensor img = random_image(3);
  for (auto _ : state) benchmark::DoNotOptimize(block.forward(img));
}
BENCHMARK(BM_RetinaForward);

void BM_RetinaForwardChannel(benchmark::State& state) {
  const retina::RetinaBlock block{retina::RetinaBlockConfig{}};
  const ImageTensor img = random_image(3);
  const int ch = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(block.forward_channel(img, ch));
}
BENCHMARK(BM_RetinaForwardChannel)->Arg(retina::midget_rg)->Arg(retina::parasol);

void BM_VOneBlockForward(benchmark::State& state) {
  const vone::GaborBank bank = vone::sample_gfb(vone::GFBConfig{}, kGeom, 3);
  const ImageTensor img = vone::center_pixels(random_image(3));
  for (auto _ : state) benchmark::DoNotOptimize(vone::voneblock_forward(img, bank));
}
BENCHMARK(BM_VOneBlockForward)->Unit(benchmark::kMillisecond);

void BM_SampleGfb(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vone::sample_gfb(vone::GFBConfig{}, kGeom, 4));
}
BENCHMARK(BM_SampleGfb)->Unit(benchmark::kMillisecond);

void BM_GratingFrames(benchmark::State& state) {
  lab::GratingSpec spec;
  spec.sf_cpd = 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(lab::grating_frames(spec, kGeom));
}
BENCHMARK(BM_GratingFrames);

void BM_UnitSfTuning(benchmark::State& state) {
  const vone::GaborBank bank = vone::sample_gfb(vone::GFBConfig{}, kGeom, 3);
  const auto& unit = bank.units()[0];
  for (auto _ : state) {
    lab::GratingSpec base;
    base.orientation = unit.params.theta;
    benchmark::DoNotOptimize(lab::sf_tuning(lab::vone_probe(bank, 0), lab::metric_for(unit.cell_type), kGeom, 1.0, base));
  }
}
BENCHMARK(BM_UnitSfTuning)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
