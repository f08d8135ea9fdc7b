#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nls/config.hpp"
#include "nls/errors.hpp"
#include "nls/experiments.hpp"
#include "nls/io.hpp"
#include "nls/norms.hpp"
#include "nls/propagator.hpp"
#include "nls/regime.hpp"

// Exit codes: 0 success / experiment PASS, 1 experiment FAIL, 2 config or
// usage error, 3 runtime error. A blow-up in a plain run is a legitimate
// outcome: the partial trajectory is written with a flagged report, exit 0.

namespace {

std::string join(const std::string& dir, const std::string& file) {
  if (dir.empty() || dir.back() == '/') return dir + file;
  return dir + "/" + file;
}

nls::RunConfig load(const std::string& config_path,
                    const std::string& out_override) {
  nls::RunConfig cfg = nls::load_config(config_path);
  if (!out_override.empty()) cfg.output_dir = out_override;
  return cfg;
}

nls::RegimeVerdict verdict_of(const nls::RunConfig& cfg) {
  return nls::regime(cfg.grid.dim, cfg.params.sigma, cfg.params.lambda,
                     cfg.potential.classify());
}

int do_run(const std::string& config_path, const std::string& out_override,
           bool dry_run) {
  nls::RunConfig cfg = load(config_path, out_override);
  nls::RegimeVerdict v = verdict_of(cfg);
  if (dry_run) {
    std::cout << describe(v) << "\n";
    return 0;
  }
  nls::GridPtr g = nls::make_grid(cfg.grid);
  nls::WaveField u0 = nls::build_initial_condition(g, cfg.ic);

  nls::ensure_directory(cfg.output_dir);
  nls::ExperimentReport rep;
  rep.name = "run";
  rep.parameters.emplace_back("config", config_path);
  rep.parameters.emplace_back("potential", cfg.potential.describe());
  rep.parameters.emplace_back("regime", describe(v));
  rep.parameters.emplace_back("lambda", nls::format_double(cfg.params.lambda));
  rep.parameters.emplace_back("sigma", nls::format_double(cfg.params.sigma));
  rep.parameters.emplace_back("dt", nls::format_double(cfg.params.dt));
  rep.parameters.emplace_back("T", nls::format_double(cfg.params.T));

  std::string csv = join(cfg.output_dir, "trajectory.csv");
  try {
    nls::Trajectory traj = nls::evolve(u0, cfg.potential, cfg.params);
    nls::write_diagnostics_csv(traj, csv);
    rep.pass = true;
    rep.measured.emplace_back("final_time", traj.final_time);
    rep.measured.emplace_back("steps", double(traj.steps_taken));
    rep.measured.emplace_back("mass_final",
                              traj.diagnostics.back().mass);
  } catch (const nls::BlowupDetected& ex) {
    nls::write_diagnostics_csv(ex.partial(), csv);
    rep.pass = true;
    rep.note = std::string("stopped early: ") + ex.what();
    rep.measured.emplace_back("final_time", ex.partial().final_time);
    rep.measured.emplace_back("steps", double(ex.partial().steps_taken));
  }
  rep.artifacts.push_back(csv);
  nls::write_report_json(rep, join(cfg.output_dir, "run.json"));
  std::cerr << "wrote " << csv << "\n";
  if (!rep.note.empty()) std::cerr << rep.note << "\n";
  return 0;
}

int do_experiment(const std::string& name, const std::string& config_path,
                  const std::string& out_override, bool dry_run) {
  nls::RunConfig cfg = load(config_path, out_override);
  if (cfg.experiment)
    cfg.experiment->name = name;  // command line wins over [experiment] name
  else {
    nls::ExperimentSpec spec;
    spec.name = name;
    cfg.experiment = spec;
  }
  if (dry_run) {
    std::cout << describe(verdict_of(cfg)) << "\n";
    return 0;
  }
  nls::ExperimentReport rep = nls::run_experiment(cfg, cfg.output_dir);
  std::cerr << rep.name << ": " << (rep.pass ? "PASS" : "FAIL");
  if (!rep.note.empty()) std::cerr << " (" << rep.note << ")";
  std::cerr << "\n";
  for (const auto& [key, value] : rep.measured)
    std::cerr << "  " << key << " = " << nls::format_double(value) << "\n";
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral NLS simulator and weighted-space diagnostics"};
  app.require_subcommand(1);

  std::string config_path, out_override;
  bool dry_run = false;

  CLI::App* run = app.add_subcommand(
      "run", "evolve the configured initial data and write diagnostics");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--output-dir", out_override, "override the output directory");
  run->add_flag("--dry-run", dry_run,
                "validate the config and print the regime verdict");

  std::string exp_name;
  CLI::App* exp = app.add_subcommand("experiment", "run a named experiment");
  exp->add_option("name", exp_name, "experiment name (see `list`)")
      ->required();
  exp->add_option("--config", config_path, "config file")->required();
  exp->add_option("--output-dir", out_override, "override the output directory");
  exp->add_flag("--dry-run", dry_run,
                "validate the config and print the regime verdict");

  CLI::App* list = app.add_subcommand("list", "print known experiment names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const std::string& n : nls::experiment_names()) std::cout << n << "\n";
      return 0;
    }
    if (run->parsed()) return do_run(config_path, out_override, dry_run);
    return do_experiment(exp_name, config_path, out_override, dry_run);
  } catch (const nls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nls::GuardRejected& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
