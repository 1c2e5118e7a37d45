// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/cli/manifest.hpp"

#include "evfront/cli/io.hpp"
#include "evfront/error.hpp"

namespace evfront::cli {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "evfront-manifest";
constexpr int kFormatVersion = 1;

struct NamedKernel {
  std::string name;
  Kernel kernel;
};

std::vector<NamedKernel> retina_kernels(const retina::RetinaBlockConfig& rc) {
  const auto& g = rc.geometry;
  const auto& la = rc.light_adapt;
  const auto& cn = rc.contrast_norm;
  const auto& m = rc.midget_dog;
  const auto& p = rc.parasol_dog;
  std::vector<NamedKernel> out;
  out.push_back({"light_adapt_pool", gaussian_kernel(la.pool_radius_deg, la.kernel_px, g)});
  out.push_back({"midget_center", gaussian_kernel(m.rc_deg, m.kernel_px, g)});
  out.push_back({"midget_surround", gaussian_kernel(m.rs_deg, m.kernel_px, g)});
  out.push_back({"midget_dog", dog_kernel(m, g)});
  out.push_back({"parasol_center", gaussian_kernel(p.rc_deg, p.kernel_px, g)});
  out.push_back({"parasol_surround", gaussian_kernel(p.rs_deg, p.kernel_px, g)});
  out.push_back({"parasol_dog", dog_kernel(p, g)});
  out.push_back({"contrast_norm_pool", gaussian_kernel(cn.pool_radius_deg, cn.kernel_px, g)});
  return out;
}

json append_kernel(std::vector<std::uint8_t>& blob, const std::string& name, const Kernel& k) {
  const std::size_t offset = blob.size();
  for (double w : k.weights()) append_f32_le(blob, static_cast<float>(w));
  return {{"name", name}, {"height", k.height()}, {"width", k.width()}, {"offset_bytes", offset}};
}

GaborParams unit_params(const json& u) {
  GaborParams p;
  p.theta = u.at("theta_rad").get<double>();
  p.sf_cpd = u.at("sf_cpd").get<double>();
  p.phase = u.at("phase_rad").get<double>();
  p.nx = u.at("nx").get<double>();
  p.ny = u.at("ny").get<double>();
  p.kernel_px = u.at("kernel_px").get<int>();
  return p;
}

// Writes the retina kernels and each unit's even/odd pair in manifest order.
std::vector<std::uint8_t> weights_for(const retina::RetinaBlockConfig& rc, const std::vector<GaborParams>& units,
                                      json* kernel_index, json* unit_index) {
  std::vector<std::uint8_t> blob;
  json kernels = json::array();
  for (const auto& nk : retina_kernels(rc)) kernels.push_back(append_kernel(blob, nk.name, nk.kernel));
  json offsets = json::array();
  for (const auto& p : units) {
    const auto [even, odd] = gabor_pair(p, rc.geometry);
    offsets.push_back({append_kernel(blob, "even", even), append_kernel(blob, "odd", odd)});
  }
  if (kernel_index != nullptr) *kernel_index = std::move(kernels);
  if (unit_index != nullptr) *unit_index = std::move(offsets);
  return blob;
}

}  // namespace

BuildArtifacts build_artifacts(const RunConfig& cfg) {
  validate(cfg);
  const auto& geom = cfg.geometry();
  const vone::GaborBank vone_bank = vone::sample_gfb(cfg.gfb, geom, 3);
  const vone::GaborBank ev_bank = vone::sample_gfb(cfg.gfb, geom, retina::kNumChannels);

  std::vector<GaborParams> params;
  params.reserve(vone_bank.size());
  for (const auto& u : vone_bank.units()) params.push_back(u.params);

  json kernel_index;
  json unit_offsets;
  BuildArtifacts a;
  a.weights = weights_for(cfg.retina, params, &kernel_index, &unit_offsets);

  json units = json::array();
  for (std::size_t i = 0; i < vone_bank.size(); ++i) {
    const auto& u = vone_bank.units()[i];
    const auto& even = vone_bank.even_kernel(i);
    units.push_back({
        {"index", i},
        {"cell_type", std::string(vone::to_string(u.cell_type))},
        {"input_channel_vone", u.input_channel},
        {"input_channel_ev", ev_bank.units()[i].input_channel},
        {"theta_rad", u.params.theta},
        {"sf_cpd", u.params.sf_cpd},
        {"phase_rad", u.params.phase},
        {"nx", u.params.nx},
        {"ny", u.params.ny},
        {"kernel_px", u.params.kernel_px},
        {"kernel_size_px", even.height()},
        {"even", unit_offsets[i][0]},
        {"odd", unit_offsets[i][1]},
    });
  }

  int n_simple = 0;
  for (const auto& u : vone_bank.units()) n_simple += u.cell_type == vone::CellType::simple ? 1 : 0;

  const auto blob_hash = sha256(a.weights);
  a.manifest = {
      {"format", kFormat},
      {"format_version", kFormatVersion},
      {"config", emit_run_config(cfg)},
      {"config_sha256", config_hash(cfg)},
      {"seed", cfg.seed},
      {"retina",
       {{"midget_dog", {{"rc_deg", cfg.retina.midget_dog.rc_deg},
                        {"rs_deg", cfg.retina.midget_dog.rs_deg},
                        {"surround_to_center_ratio", cfg.retina.midget_dog.surround_to_center_ratio},
                        {"kernel_px", cfg.retina.midget_dog.kernel_px}}},
        {"parasol_dog", {{"rc_deg", cfg.retina.parasol_dog.rc_deg},
                         {"rs_deg", cfg.retina.parasol_dog.rs_deg},
                         {"surround_to_center_ratio", cfg.retina.parasol_dog.surround_to_center_ratio},
                         {"kernel_px", cfg.retina.parasol_dog.kernel_px}}},
        {"kernels", kernel_index}}},
      {"gfb",
       {{"n_units", vone_bank.size()},
        {"n_simple", n_simple},
        {"n_complex", static_cast<int>(vone_bank.size()) - n_simple},
        {"sf_bounds_cpd", {cfg.gfb.sf_min_cpd, cfg.gfb.sf_max_cpd}},
        {"stride", cfg.gfb.stride},
        {"seed", cfg.gfb.seed}}},
      {"units", units},
      {"weights",
       {{"file", "weights.bin"},
        {"dtype", "float32_le"},
        {"size_bytes", a.weights.size()},
        {"sha256", to_hex(blob_hash)}}},
  };
  return a;
}

std::vector<std::uint8_t> rebuild_weights(const json& manifest) {
  try {
    if (manifest.at("format") != kFormat || manifest.at("format_version") != kFormatVersion) {
      throw ConfigError("not an evfront manifest");
    }
    const RunConfig cfg = parse_run_config(manifest.at("config"));
    std::vector<GaborParams> params;
    for (const auto& u : manifest.at("units")) params.push_back(unit_params(u));
    return weights_for(cfg.retina, params, nullptr, nullptr);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

vone::GaborBank bank_from_manifest(const json& manifest, bool for_ev) {
  try {
    const RunConfig cfg = parse_run_config(manifest.at("config"));
    std::vector<vone::GaborUnit> units;
    for (const auto& u : manifest.at("units")) {
      vone::GaborUnit unit;
      unit.params = unit_params(u);
      unit.cell_type = vone::cell_type_from_string(u.at("cell_type").get<std::string>());
      unit.input_channel = u.at(for_ev ? "input_channel_ev" : "input_channel_vone").get<int>();
      units.push_back(unit);
    }
    return vone::GaborBank(std::move(units), cfg.geometry(), manifest.at("gfb").at("stride").get<int>(),
                           manifest.at("seed").get<std::uint64_t>(), for_ev ? retina::kNumChannels : 3);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace evfront::cli
