// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "CLI11.hpp"
#include "evfront/cli/commands.hpp"

namespace cli = evfront::cli;

int main(int argc, char** argv) {
  CLI::App app{"evfront: fixed-weight retina + V1 front-end and neurophysiology probes"};
  app.require_subcommand(1);

  cli::CommonOptions opts;
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "JSON run config (defaults apply when omitted)");
    sub->add_option("--seed", seed, "GFB sampling seed, overrides the config");
    sub->add_option("--out", out, "output directory, overrides the config");
  };

  CLI::App* build = app.add_subcommand("build", "write the filter manifest and float32 weight blob");
  add_common(build);

  CLI::App* apply = app.add_subcommand("apply", "run a front-end on a PNG and export an EVF1 bundle");
  add_common(apply);
  std::string image;
  std::string front = "ev";
  apply->add_option("image", image, "input PNG")->required();
  apply->add_option("--front", front, "retina, vone or ev")->check(CLI::IsMember({"retina", "vone", "ev"}));

  CLI::App* probe = app.add_subcommand("probe", "SF or contrast tuning of a retina channel or V1 unit");
  add_common(probe);
  std::string target;
  std::string axis = "sf";
  bool probe_with_retina = false;
  probe->add_option("--target", target, "midget, parasol or unit:<i>")->required();
  probe->add_option("--axis", axis, "sf or contrast")->check(CLI::IsMember({"sf", "contrast"}));
  probe->add_flag("--with-retina", probe_with_retina, "place the RetinaBlock in front of V1 units");

  CLI::App* population = app.add_subcommand("population", "optimal-SF distribution of the Gabor bank");
  add_common(population);
  bool pop_with_retina = false;
  population->add_flag("--with-retina", pop_with_retina, "also run behind the RetinaBlock and report the shift");

  CLI::App* report = app.add_subcommand("report", "run every experiment listed in the config");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kConfigError;
  }

  try {
    for (CLI::App* sub : app.get_subcommands()) {
      if (!sub->get_option("--config")->empty()) opts.config_path = config;
      if (!sub->get_option("--seed")->empty()) opts.seed = seed;
      if (!sub->get_option("--out")->empty()) opts.out = out;
    }
    if (build->parsed()) cli::cmd_build(opts);
    if (apply->parsed()) std::cout << cli::cmd_apply(opts, image, cli::front_from_string(front)).string() << "\n";
    if (probe->parsed()) cli::cmd_probe(opts, target, axis, probe_with_retina);
    if (population->parsed()) cli::cmd_population(opts, pop_with_retina);
    if (report->parsed()) cli::cmd_report(opts);
  } catch (...) {
    return cli::exit_code_for_current_exception();
  }
  return cli::kOk;
}
