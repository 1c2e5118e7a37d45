// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/cli/commands.hpp"

#include <charconv>
#include <exception>
#include <iostream>
#include <memory>

#include "evfront/cli/bundle.hpp"
#include "evfront/cli/io.hpp"
#include "evfront/cli/manifest.hpp"
#include "evfront/cli/report.hpp"
#include "evfront/error.hpp"
#include "evfront/lab/contrast_fit.hpp"
#include "evfront/lab/population.hpp"
#include "evfront/lab/tuning.hpp"

namespace evfront::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// SF of the drifting grating used for contrast-response probes.
constexpr double kContrastProbeSfCpd = 1.0;

void write_json(const fs::path& path, const json& j) { write_text_atomic(path, j.dump(2) + "\n"); }

struct ProbeTarget {
  enum class Kind { midget, parasol, unit } kind;
  std::size_t unit = 0;
  std::string label;  // file-name friendly
};

ProbeTarget parse_target(const std::string& target) {
  if (target == "midget") return {ProbeTarget::Kind::midget, 0, "midget"};
  if (target == "parasol") return {ProbeTarget::Kind::parasol, 0, "parasol"};
  constexpr std::string_view kPrefix = "unit:";
  if (target.starts_with(kPrefix)) {
    const std::string digits = target.substr(kPrefix.size());
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
      return {ProbeTarget::Kind::unit, idx, "unit" + digits};
    }
  }
  throw ConfigError("unknown probe target '" + target + "' (expected midget, parasol or unit:<i>)");
}

lab::Axis parse_axis(const std::string& axis) {
  if (axis == "sf") return lab::Axis::sf;
  if (axis == "contrast") return lab::Axis::contrast;
  throw ConfigError("unknown probe axis '" + axis + "' (expected sf or contrast)");
}

// Runs one probe and writes <out>/probe_<target>_<axis>.{csv,json,svg}.
json run_probe(const RunConfig& cfg, const fs::path& out, const std::string& target, const std::string& axis_name,
               bool with_retina) {
  const ProbeTarget t = parse_target(target);
  const lab::Axis axis = parse_axis(axis_name);
  const auto& geom = cfg.geometry();
  const retina::RetinaBlock block(cfg.retina);

  lab::Probe probe;
  lab::Metric metric = lab::Metric::F1;
  lab::GratingSpec base;
  double contrast_sf = kContrastProbeSfCpd;
  std::unique_ptr<vone::GaborBank> bank;
  if (t.kind == ProbeTarget::Kind::unit) {
    bank = std::make_unique<vone::GaborBank>(
        vone::sample_gfb(cfg.gfb, geom, with_retina ? retina::kNumChannels : 3));
    if (t.unit >= bank->size()) {
      throw ConfigError("unit index " + std::to_string(t.unit) + " out of range (bank has " +
                        std::to_string(bank->size()) + " units)");
    }
    const auto& unit = bank->units()[t.unit];
    probe = lab::vone_probe(*bank, t.unit, with_retina ? &block : nullptr);
    metric = lab::metric_for(unit.cell_type);
    base = lab::matched_grating(unit, unit.params.sf_cpd);
    contrast_sf = unit.params.sf_cpd;
  } else {
    probe = lab::retina_probe(block, t.kind == ProbeTarget::Kind::midget ? retina::midget_rg : retina::parasol);
  }

  const lab::TuningCurve curve = axis == lab::Axis::sf
                                     ? lab::sf_tuning(probe, metric, geom, 1.0, base, target)
                                     : lab::contrast_curve(probe, metric, geom, contrast_sf, base, target);
  std::optional<lab::ContrastFit> fit;
  if (axis == lab::Axis::contrast) fit = lab::fit_log_saturation(curve);

  json j = tuning_json(curve, fit);
  if (t.kind == ProbeTarget::Kind::unit) j["with_retina"] = with_retina;

  const std::string stem = "probe_" + t.label + "_" + axis_name;
  write_text_atomic(out / (stem + ".csv"), tuning_csv(curve));
  write_json(out / (stem + ".json"), j);
  write_text_atomic(out / (stem + ".svg"), tuning_svg(curve, target + " " + axis_name + " tuning"));
  return j;
}

json run_population(const RunConfig& cfg, const fs::path& out, bool with_retina) {
  const auto& geom = cfg.geometry();
  const vone::GaborBank bank = vone::sample_gfb(cfg.gfb, geom, 3);
  const lab::PopulationSummary without = lab::population_sf_stats(bank, nullptr, geom);
  write_text_atomic(out / "population_units.csv", population_csv(bank, without));

  json j = {{"without_retina", population_json(without)}};
  if (with_retina) {
    const retina::RetinaBlock block(cfg.retina);
    const vone::GaborBank ev_bank = vone::sample_gfb(cfg.gfb, geom, retina::kNumChannels);
    const lab::PopulationSummary with = lab::population_sf_stats(ev_bank, &block, geom);
    write_text_atomic(out / "population_units_with_retina.csv", population_csv(ev_bank, with));
    write_text_atomic(out / "population_histogram.csv", histogram_csv(without, &with));
    j["with_retina"] = population_json(with);
    j["mean_shift_cpd"] = without.mean_optimal_sf - with.mean_optimal_sf;
  } else {
    write_text_atomic(out / "population_histogram.csv", histogram_csv(without, nullptr));
  }
  j["seed"] = cfg.seed;
  write_json(out / "population.json", j);
  return j;
}

}  // namespace

Front front_from_string(const std::string& s) {
  if (s == "retina") return Front::retina;
  if (s == "vone") return Front::vone;
  if (s == "ev") return Front::ev;
  throw ConfigError("unknown front-end '" + s + "' (expected retina, vone or ev)");
}

RunConfig resolve_config(const CommonOptions& opts) {
  RunConfig cfg = opts.config_path ? load_run_config(*opts.config_path) : RunConfig{};
  if (opts.seed) {
    cfg.seed = *opts.seed;
    cfg.gfb.seed = *opts.seed;
  }
  validate(cfg);
  return cfg;
}

fs::path resolve_out(const CommonOptions& opts, const RunConfig& cfg) {
  return opts.out ? *opts.out : fs::path(cfg.output_dir);
}

void cmd_build(const CommonOptions& opts) {
  const RunConfig cfg = resolve_config(opts);
  const fs::path out = resolve_out(opts, cfg);
  const BuildArtifacts a = build_artifacts(cfg);
  write_file_atomic(out / "weights.bin", a.weights);
  write_json(out / "manifest.json", a.manifest);
}

fs::path cmd_apply(const CommonOptions& opts, const fs::path& image_path, Front front) {
  const RunConfig cfg = resolve_config(opts);
  const fs::path out = resolve_out(opts, cfg);
  const auto& geom = cfg.geometry();

  const auto source = read_file(image_path);
  const ImageTensor image = read_png_rgb(image_path);
  if (image.height() != image.width()) {
    throw GeometryError("image is " + std::to_string(image.height()) + "x" + std::to_string(image.width()) +
                        ", expected a square image");
  }
  if (image.height() != geom.resolution_px()) {
    throw GeometryError("image is " + std::to_string(image.height()) + " px wide but the configured field is " +
                        std::to_string(geom.resolution_px()) + " px");
  }

  ImageTensor act;
  std::string front_name;
  switch (front) {
    case Front::retina:
      act = retina::RetinaBlock(cfg.retina).forward(image);
      front_name = "retina";
      break;
    case Front::vone:
      act = vone::voneblock_forward(vone::center_pixels(image), vone::sample_gfb(cfg.gfb, geom, 3));
      front_name = "vone";
      break;
    case Front::ev:
      act = vone::evfront_forward(image, retina::RetinaBlock(cfg.retina),
                                  vone::sample_gfb(cfg.gfb, geom, retina::kNumChannels));
      front_name = "ev";
      break;
  }
  if (!act.all_finite()) throw ComputeError("non-finite activations");

  ActivationBundle b = ActivationBundle::from_tensor(act);
  const std::string cfg_text = emit_run_config(cfg).dump();
  b.config_hash = sha256({reinterpret_cast<const std::uint8_t*>(cfg_text.data()), cfg_text.size()});
  b.seed = cfg.seed;
  b.source_hash = sha256(source);

  const fs::path dest = out / (image_path.stem().string() + "." + front_name + ".evf1");
  write_bundle(dest, b);
  return dest;
}

void cmd_probe(const CommonOptions& opts, const std::string& target, const std::string& axis, bool with_retina) {
  const RunConfig cfg = resolve_config(opts);
  run_probe(cfg, resolve_out(opts, cfg), target, axis, with_retina);
}

void cmd_population(const CommonOptions& opts, bool with_retina) {
  const RunConfig cfg = resolve_config(opts);
  run_population(cfg, resolve_out(opts, cfg), with_retina);
}

void cmd_report(const CommonOptions& opts) {
  const RunConfig cfg = resolve_config(opts);
  const fs::path out = resolve_out(opts, cfg);
  json results = json::object();
  for (const auto& e : cfg.experiments) {
    if (e == "midget_sf") results[e] = run_probe(cfg, out, "midget", "sf", false);
    if (e == "parasol_sf") results[e] = run_probe(cfg, out, "parasol", "sf", false);
    if (e == "midget_contrast") results[e] = run_probe(cfg, out, "midget", "contrast", false);
    if (e == "parasol_contrast") results[e] = run_probe(cfg, out, "parasol", "contrast", false);
    if (e == "population") results[e] = run_population(cfg, out, true);
  }

  json summary = {{"config_sha256", config_hash(cfg)}, {"seed", cfg.seed}, {"experiments", cfg.experiments}};
  if (results.contains("midget_sf")) summary["midget_optimal_sf_cpd"] = results["midget_sf"]["optimal_sf_cpd"];
  if (results.contains("parasol_sf")) summary["parasol_optimal_sf_cpd"] = results["parasol_sf"]["optimal_sf_cpd"];
  for (const char* k : {"midget_contrast", "parasol_contrast"}) {
    if (results.contains(k)) summary[std::string(k) + "_fit"] = results[k]["contrast_fit"];
  }
  if (results.contains("population")) {
    const auto& p = results["population"];
    summary["population"] = {
        {"mean_optimal_sf_without_retina_cpd", p["without_retina"]["mean_optimal_sf_cpd"]},
        {"mean_optimal_sf_with_retina_cpd", p["with_retina"]["mean_optimal_sf_cpd"]},
        {"mean_shift_cpd", p["mean_shift_cpd"]},
    };
  }
  write_json(out / "report.json", summary);
}

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kComputeError;
  }
}

}  // namespace evfront::cli
