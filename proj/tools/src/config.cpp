// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include "evfront/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "evfront/cli/io.hpp"
#include "evfront/error.hpp"

namespace evfront::cli {

using nlohmann::json;

namespace {

// Reads the keys of one object, remembering which were consumed so that
// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string path(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.contains(k)) throw ConfigError("unknown config key " + path_ + "." + k);
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_dog(const json& j, const std::string& path, DoGParams& p) {
  ObjectReader r(j, path);
  r.read("rc_deg", p.rc_deg);
  r.read("rs_deg", p.rs_deg);
  r.read("surround_to_center_ratio", p.surround_to_center_ratio);
  r.read("kernel_px", p.kernel_px);
  r.finish();
}

json emit_dog(const DoGParams& p) {
  return {{"rc_deg", p.rc_deg},
          {"rs_deg", p.rs_deg},
          {"surround_to_center_ratio", p.surround_to_center_ratio},
          {"kernel_px", p.kernel_px}};
}

void read_table(const json& j, const std::string& path, vone::HistogramTable& t) {
  ObjectReader r(j, path);
  r.read("edges", t.edges);
  r.read("weights", t.weights);
  r.finish();
}

json emit_table(const vone::HistogramTable& t) { return {{"edges", t.edges}, {"weights", t.weights}}; }

void read_retina(const json& j, retina::RetinaBlockConfig& c) {
  ObjectReader r(j, "retina");
  if (const json* la = r.child("light_adapt")) {
    ObjectReader lr(*la, r.path("light_adapt"));
    lr.read("pool_radius_deg", c.light_adapt.pool_radius_deg);
    lr.read("kernel_px", c.light_adapt.kernel_px);
    lr.read("epsilon", c.light_adapt.epsilon);
    lr.finish();
  }
  if (const json* d = r.child("midget_dog")) read_dog(*d, r.path("midget_dog"), c.midget_dog);
  if (const json* d = r.child("parasol_dog")) read_dog(*d, r.path("parasol_dog"), c.parasol_dog);
  if (const json* cn = r.child("contrast_norm")) {
    ObjectReader cr(*cn, r.path("contrast_norm"));
    cr.read("c50", c.contrast_norm.c50);
    cr.read("pool_radius_deg", c.contrast_norm.pool_radius_deg);
    cr.read("kernel_px", c.contrast_norm.kernel_px);
    cr.finish();
  }
  if (const json* op = r.child("opponency")) {
    ObjectReader orr(*op, r.path("opponency"));
    for (auto& spec : c.opponency) {
      const std::string name(retina::to_string(spec.name));
      if (const json* s = orr.child(name.c_str())) {
        ObjectReader sr(*s, orr.path(name.c_str()));
        sr.read("center_weights", spec.center_weights);
        sr.read("surround_weights", spec.surround_weights);
        sr.finish();
      }
    }
    orr.finish();
  }
  r.finish();
}

void read_gfb(const json& j, vone::GFBConfig& g) {
  ObjectReader r(j, "gfb");
  r.read("n_units", g.n_units);
  r.read("n_simple", g.n_simple);
  r.read("n_complex", g.n_complex);
  if (const json* b = r.child("sf_bounds_cpd")) {
    std::array<double, 2> bounds{g.sf_min_cpd, g.sf_max_cpd};
    try {
      bounds = b->get<std::array<double, 2>>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("gfb.sf_bounds_cpd: ") + e.what());
    }
    g.sf_min_cpd = bounds[0];
    g.sf_max_cpd = bounds[1];
  }
  if (const json* t = r.child("orientation_table_deg")) read_table(*t, r.path("orientation_table_deg"), g.orientation_deg);
  if (const json* t = r.child("sf_table_cpd")) read_table(*t, r.path("sf_table_cpd"), g.sf_cpd);
  if (const json* e = r.child("envelope")) {
    ObjectReader er(*e, r.path("envelope"));
    er.read("nx_min", g.envelope.nx_min);
    er.read("nx_max", g.envelope.nx_max);
    er.read("ny_ratio_min", g.envelope.ny_ratio_min);
    er.read("ny_ratio_max", g.envelope.ny_ratio_max);
    er.finish();
  }
  r.read("kernel_px", g.kernel_px);
  r.read("stride", g.stride);
  r.finish();
}

}  // namespace

const std::vector<std::string>& known_experiments() {
  static const std::vector<std::string> names{"midget_sf", "parasol_sf", "midget_contrast", "parasol_contrast",
                                              "population"};
  return names;
}

void validate(const RunConfig& cfg) {
  retina::validate(cfg.retina);
  vone::validate(cfg.gfb);
  if (cfg.gfb.seed != cfg.seed) throw ConfigError("GFB seed must equal the run seed");
  for (const auto& e : cfg.experiments) {
    const auto& known = known_experiments();
    if (std::find(known.begin(), known.end(), e) == known.end()) {
      throw ConfigError("unknown experiment '" + e + "'");
    }
  }
  if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

RunConfig parse_run_config(const json& j) {
  RunConfig cfg;
  ObjectReader r(j, "config");
  double fov = cfg.retina.geometry.fov_deg();
  int res = cfg.retina.geometry.resolution_px();
  if (const json* f = r.child("field")) {
    ObjectReader fr(*f, r.path("field"));
    fr.read("fov_deg", fov);
    fr.read("resolution_px", res);
    fr.finish();
  }
  cfg.retina.geometry = make_field(fov, res);
  if (const json* rj = r.child("retina")) read_retina(*rj, cfg.retina);
  if (const json* g = r.child("gfb")) read_gfb(*g, cfg.gfb);
  r.read("seed", cfg.seed);
  r.read("experiments", cfg.experiments);
  r.read("output_dir", cfg.output_dir);
  r.finish();
  cfg.gfb.seed = cfg.seed;
  validate(cfg);
  return cfg;
}

json emit_run_config(const RunConfig& cfg) {
  const auto& rc = cfg.retina;
  json opp = json::object();
  for (const auto& spec : rc.opponency) {
    opp[std::string(retina::to_string(spec.name))] = {{"center_weights", spec.center_weights},
                                                      {"surround_weights", spec.surround_weights}};
  }
  const auto& g = cfg.gfb;
  return {
      {"field", {{"fov_deg", rc.geometry.fov_deg()}, {"resolution_px", rc.geometry.resolution_px()}}},
      {"retina",
       {{"light_adapt",
         {{"pool_radius_deg", rc.light_adapt.pool_radius_deg},
          {"kernel_px", rc.light_adapt.kernel_px},
          {"epsilon", rc.light_adapt.epsilon}}},
        {"midget_dog", emit_dog(rc.midget_dog)},
        {"parasol_dog", emit_dog(rc.parasol_dog)},
        {"contrast_norm",
         {{"c50", rc.contrast_norm.c50},
          {"pool_radius_deg", rc.contrast_norm.pool_radius_deg},
          {"kernel_px", rc.contrast_norm.kernel_px}}},
        {"opponency", opp}}},
      {"gfb",
       {{"n_units", g.n_units},
        {"n_simple", g.n_simple},
        {"n_complex", g.n_complex},
        {"sf_bounds_cpd", {g.sf_min_cpd, g.sf_max_cpd}},
        {"orientation_table_deg", emit_table(g.orientation_deg)},
        {"sf_table_cpd", emit_table(g.sf_cpd)},
        {"envelope",
         {{"nx_min", g.envelope.nx_min},
          {"nx_max", g.envelope.nx_max},
          {"ny_ratio_min", g.envelope.ny_ratio_min},
          {"ny_ratio_max", g.envelope.ny_ratio_max}}},
        {"kernel_px", g.kernel_px},
        {"stride", g.stride}}},
      {"seed", cfg.seed},
      {"experiments", cfg.experiments},
      {"output_dir", cfg.output_dir},
  };
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = emit_run_config(cfg).dump();
  const auto digest = sha256({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
  return to_hex(digest);
}

}  // namespace evfront::cli
