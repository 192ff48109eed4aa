#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclone/calibration.hpp"
#include "cyclone/dae.hpp"

namespace cyclone {

// One cyclone run, fully specified in SI after loading.
struct ScenarioConfig {
  std::string name;
  CycloneGeometry geometry;

  double V_in = 0.0;       // volumetric inflow, m^3/s; v_in = V_in/A_in
  double T_in = 0.0;       // K
  double P_out = 0.0;      // Pa
  double P_in = 0.0;       // Pa
  double T_e = 298.15;     // K
  double false_air = 0.0;  // m^3/s at ambient conditions
  SpeciesVec C_s_in{};     // mol/m^3 in the inflow stream
  SpeciesVec C_g_in{};
  bool composition_approximated = false;

  FlowParameters flow;
  HeatTransferParams heat;
  WallMaterial refractory;
  WallMaterial wall;
  std::array<double, kNumReactions> tuning{1.0, 1.0, 1.0, 1.0, 1.0};
  SolverSettings solver;
  double t_end = 60.0;  // s

  std::optional<CalibrationTarget> target;

  BoundaryConditions boundary() const;
  void validate() const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Loads a scenario file. A "preset" key pulls the named bundled scenario
// first; any other keys in the file override it field by field.
ScenarioConfig load_scenario(const std::string& path);

// Bundled preset "cy1".."cy5" from <data dir>/presets/<name>.json.
ScenarioConfig load_preset(const std::string& name);

void save_scenario(const ScenarioConfig& cfg, const std::string& path);

// The species database must outlive the model.
CycloneModel make_model(const SpeciesDb& db, const ScenarioConfig& cfg);

struct SteadySummary {
  std::string name;
  double P = 0.0;    // Pa
  double T_m = 0.0;  // K
  double T_r = 0.0;
  double T_w = 0.0;
  double eta = 0.0;
  double eta_sal = 0.0;
  double rho_s = 0.0;
  double mdot_s_in = 0.0, mdot_s_out = 0.0, mdot_s_sep = 0.0;
  double mdot_g_in = 0.0, mdot_g_out = 0.0;
};

SteadySummary summarize(const std::string& name, const CycloneModel& model,
                        const DifferentialState& x, const AlgebraicState& y);

void write_summary(const SteadySummary& s, const std::string& path);
SteadySummary load_summary(const std::string& path);

// Time-series CSV: t, P, T_m, T_r, T_w, per-species C_s and C_g, eta,
// eta_sal, rho_s, and port mass flows, at full round-trip precision.
void write_csv(const TimeSeries& series, const std::string& path);

// Long-format plot data: quantity,t,value.
void write_plot_data(const TimeSeries& series, const std::string& path);

// Bundled steady-state reference values for one cyclone.
struct ReferenceRow {
  double P = 0.0, P_in = 0.0, P_out = 0.0, P_mean = 0.0;  // Pa
  double T = 0.0, T_ref_in = 0.0, T_ref_out = 0.0;        // K
  double eta_sim = 0.0, eta_ref = 0.0;
  double rho_s_sim = 0.0, rho_s_ref = 0.0;  // kg/m^3
  double eta_sal = 0.0;
  double f_N_inv = 0.0, f_c = 0.0, f_D_scale = 0.0;
};

ReferenceRow load_reference(const std::string& name);

struct Tolerances {
  double P = 200.0;        // Pa (0.002 bar)
  double T = 5.0;          // K
  double eta = 0.005;      // absolute fraction
  double rho_s_rel = 0.05;
  double eta_sal = 0.05;
};

// "key=value" pairs, comma separated, SI values; e.g. "P=150,T=3,eta=0.004".
Tolerances parse_tolerances(const std::string& spec);

struct CellDiff {
  std::string cell;
  double value = 0.0;
  double reference = 0.0;
  double diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct DiffReport {
  std::vector<CellDiff> cells;
  bool pass = false;
};

DiffReport compare_report(const SteadySummary& s, const ReferenceRow& ref,
                          const Tolerances& tol);
std::string format_diff(const DiffReport& d);

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"cy1", "cy2", "cy3", "cy4", "cy5"};
  return names;
}

}  // namespace cyclone
