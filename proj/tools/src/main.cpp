#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cyclone/calibration.hpp"
#include "cyclone/scenario.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 solver failure, 4 tolerance failure.
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitTolerance = 4;

struct CommonArgs {
  std::string scenario_path;
  std::string preset;
  std::string out_dir = ".";
  double t_end = -1.0;  // <0: use the scenario's own t_end
  std::string tolerance;
  std::string summary_path;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_t_end) {
  auto* sc = cmd->add_option("--scenario", args.scenario_path, "scenario file");
  auto* pr = cmd->add_option("--preset", args.preset, "bundled preset cy1..cy5");
  sc->excludes(pr);
  cmd->add_option("--out", args.out_dir, "output directory");
  if (with_t_end) cmd->add_option("--t-end", args.t_end, "simulation end time, s");
}

cyclone::ScenarioConfig resolve_config(const CommonArgs& args) {
  if (!args.scenario_path.empty()) return cyclone::load_scenario(args.scenario_path);
  if (!args.preset.empty()) return cyclone::load_preset(args.preset);
  throw cyclone::ConfigError("either --scenario or --preset is required");
}

std::string out_path(const CommonArgs& args, const std::string& file) {
  std::filesystem::create_directories(args.out_dir);
  return (std::filesystem::path(args.out_dir) / file).string();
}

void print_summary(const cyclone::SteadySummary& s) {
  std::printf("%s: P = %.4f bar, T_m = %.2f degC, T_r = %.2f degC, T_w = %.2f degC\n",
              s.name.c_str(), s.P / 1e5, s.T_m - 273.15, s.T_r - 273.15, s.T_w - 273.15);
  std::printf("  eta = %.2f %% (saltation %.2f), rho_s = %.3f kg/m3\n", 100.0 * s.eta,
              s.eta_sal, s.rho_s);
  std::printf("  solids in/out/sep = %.3f / %.3f / %.3f kg/s, gas in/out = %.2f / %.2f kg/s\n",
              s.mdot_s_in, s.mdot_s_out, s.mdot_s_sep, s.mdot_g_in, s.mdot_g_out);
}

int run_simulate(const CommonArgs& args) {
  const cyclone::ScenarioConfig cfg = resolve_config(args);
  const cyclone::SpeciesDb db = cyclone::SpeciesDb::load_default();
  cyclone::CycloneModel model = cyclone::make_model(db, cfg);
  const double t_end = args.t_end >= 0.0 ? args.t_end : cfg.t_end;
  auto [x0, y0] = model.initial_state();
  cyclone::TimeSeries series;
  try {
    series = model.simulate(x0, y0, t_end);
  } catch (const cyclone::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << " (residual " << e.residual_norm
              << ")\n";
    return kExitSolver;
  }
  cyclone::write_csv(series, out_path(args, cfg.name + "_timeseries.csv"));
  cyclone::write_plot_data(series, out_path(args, cfg.name + "_plot.csv"));
  const cyclone::Sample& last = series.back();
  const cyclone::SteadySummary s = cyclone::summarize(cfg.name, model, last.x, last.y);
  cyclone::write_summary(s, out_path(args, cfg.name + "_summary.json"));
  print_summary(s);
  return 0;
}

int run_steady(const CommonArgs& args) {
  const cyclone::ScenarioConfig cfg = resolve_config(args);
  const cyclone::SpeciesDb db = cyclone::SpeciesDb::load_default();
  cyclone::CycloneModel model = cyclone::make_model(db, cfg);
  auto [x0, y0] = model.initial_state();
  cyclone::DifferentialState x;
  cyclone::AlgebraicState y;
  try {
    std::tie(x, y) = model.steady_state(x0, y0);
  } catch (const cyclone::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << " (residual " << e.residual_norm
              << ")\n";
    return kExitSolver;
  }
  const cyclone::SteadySummary s = cyclone::summarize(cfg.name, model, x, y);
  cyclone::write_summary(s, out_path(args, cfg.name + "_summary.json"));
  print_summary(s);
  return 0;
}

int run_calibrate(const CommonArgs& args) {
  cyclone::ScenarioConfig cfg = resolve_config(args);
  if (!cfg.target) {
    std::cerr << "scenario '" << cfg.name << "' has no calibration block\n";
    return kExitConfig;
  }
  const cyclone::SpeciesDb db = cyclone::SpeciesDb::load_default();
  cyclone::CycloneModel model = cyclone::make_model(db, cfg);
  try {
    // Separation first: the friction scaling responds to the solid holdup.
    cyclone::SeparationFit sf = cyclone::calibrate_separation(model, *cfg.target);
    const cyclone::PressureFit pf = cyclone::calibrate_pressure(model, cfg.target->pressure);
    sf = cyclone::calibrate_separation(model, *cfg.target);
    cfg.flow = model.flow();
    std::printf("%s: f_D_scale = %.4g, f_N^-1 = %.4g, f_c = %.4g\n", cfg.name.c_str(),
                pf.f_D_scale, 1.0 / sf.f_N, sf.f_c);
    std::printf("  achieved P = %.4f bar, eta = %.2f %%, rho_s = %.3f kg/m3 (%d+%d steady solves)\n",
                pf.P / 1e5, 100.0 * sf.eta, sf.rho_s, pf.trace.evaluations,
                sf.trace.evaluations);
  } catch (const cyclone::CalibrationError& e) {
    std::cerr << "calibration failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const cyclone::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  cyclone::save_scenario(cfg, out_path(args, cfg.name + "_calibrated.json"));
  return 0;
}

int run_compare(const CommonArgs& args) {
  const cyclone::ScenarioConfig cfg = resolve_config(args);
  const cyclone::Tolerances tol = args.tolerance.empty()
                                      ? cyclone::Tolerances{}
                                      : cyclone::parse_tolerances(args.tolerance);
  cyclone::SteadySummary s;
  if (!args.summary_path.empty()) {
    s = cyclone::load_summary(args.summary_path);
  } else {
    const cyclone::SpeciesDb db = cyclone::SpeciesDb::load_default();
    cyclone::CycloneModel model = cyclone::make_model(db, cfg);
    auto [x0, y0] = model.initial_state();
    cyclone::DifferentialState x;
    cyclone::AlgebraicState y;
    try {
      std::tie(x, y) = model.steady_state(x0, y0);
    } catch (const cyclone::SolverError& e) {
      std::cerr << "solver failure: " << e.what() << "\n";
      return kExitSolver;
    }
    s = cyclone::summarize(cfg.name, model, x, y);
  }
  const cyclone::ReferenceRow ref = cyclone::load_reference(cfg.name);
  const cyclone::DiffReport d = cyclone::compare_report(s, ref, tol);
  std::cout << cfg.name << ":\n" << cyclone::format_diff(d);
  return d.pass ? 0 : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preheater cyclone simulator"};
  app.require_subcommand(1);
  CommonArgs args;

  auto* run = app.add_subcommand("run", "simulate a scenario and write time series");
  add_common(run, args, true);
  auto* steady = app.add_subcommand("steady", "solve and report the steady state");
  add_common(steady, args, false);
  auto* calibrate =
      app.add_subcommand("calibrate", "fit f_D_scale, f_N, f_c to the scenario targets");
  add_common(calibrate, args, false);
  auto* compare = app.add_subcommand("compare", "diff a steady state against the reference tables");
  add_common(compare, args, false);
  compare->add_option("--tolerance", args.tolerance,
                      "comma-separated key=value overrides (P, T, eta, rho_s, eta_sal)");
  compare->add_option("--summary", args.summary_path, "compare an existing summary file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_simulate(args);
    if (steady->parsed()) return run_steady(args);
    if (calibrate->parsed()) return run_calibrate(args);
    return run_compare(args);
  } catch (const cyclone::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
