#include "cyclone/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cyclone/units.hpp"

namespace cyclone {

using json = nlohmann::json;

namespace {

double quantity(const json& j, const std::string& key, const std::string& dim) {
  if (!j.contains(key)) throw ConfigError("missing required field '" + key + "'");
  const json& v = j.at(key);
  if (v.is_number()) {
    if (dim == "dimensionless") return v.get<double>();
    throw ConfigError("field '" + key + "' needs a unit (expected " + dim + ")");
  }
  try {
    return parse_quantity(v.get<std::string>(), dim);
  } catch (const std::exception& e) {
    throw ConfigError("field '" + key + "': " + e.what());
  }
}

double quantity_or(const json& j, const std::string& key, const std::string& dim,
                   double fallback) {
  return j.contains(key) ? quantity(j, key, dim) : fallback;
}

SpeciesVec parse_composition(const json& j, Phase phase, const std::string& where) {
  SpeciesVec C = zero_vec();
  for (auto it = j.begin(); it != j.end(); ++it) {
    int sp;
    try {
      sp = species_from_name(it.key());
    } catch (const std::exception&) {
      throw ConfigError(where + ": unknown species '" + it.key() + "'");
    }
    if (phase_of(sp) != phase)
      throw ConfigError(where + ": species '" + it.key() + "' is in the wrong phase");
    double c;
    if (it.value().is_number())
      c = it.value().get<double>();
    else
      c = parse_quantity(it.value().get<std::string>(), "molar_concentration");
    if (c < 0.0) throw ConfigError(where + ": negative concentration for " + it.key());
    C[sp] = c;
  }
  return C;
}

void apply_overrides(ScenarioConfig& cfg, const json& j);

json composition_json(const SpeciesVec& C, Phase phase) {
  json out = json::object();
  for (int sp = 0; sp < kNumSpecies; ++sp)
    if (phase_of(sp) == phase && C[sp] != 0.0)
      out[species_name(sp)] = format_quantity(C[sp], "mol/m3");
  return out;
}

}  // namespace

BoundaryConditions ScenarioConfig::boundary() const {
  BoundaryConditions bc;
  bc.v_in = geometry.A_in > 0.0 ? V_in / geometry.A_in : 0.0;
  bc.T_in = T_in;
  bc.C_s_in = C_s_in;
  bc.C_g_in = C_g_in;
  bc.P_out = P_out;
  bc.P_in = P_in;
  bc.T_e = T_e;
  bc.false_air = false_air;
  return bc;
}

void ScenarioConfig::validate() const {
  geometry.validate();
  flow.validate();
  heat.validate();
  if (!(T_in > 0) || !(P_out > 0) || !(T_e > 0))
    throw ConfigError("scenario '" + name + "': T_in, P_out, T_e must be positive");
  if (V_in < 0 || false_air < 0)
    throw ConfigError("scenario '" + name + "': negative flow rates");
  if (!(refractory.density > 0 && refractory.cp_mass > 0) ||
      !(wall.density > 0 && wall.cp_mass > 0))
    throw ConfigError("scenario '" + name + "': wall materials must be positive");
  for (double f : tuning)
    if (!(f > 0)) throw ConfigError("scenario '" + name + "': tuning must be positive");
  if (t_end < 0) throw ConfigError("scenario '" + name + "': negative t_end");
  if (target) target->validate();
}

namespace {

void apply_overrides(ScenarioConfig& cfg, const json& j) {
  if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
  if (j.contains("geometry")) {
    const json& g = j.at("geometry");
    CycloneGeometry& geo = cfg.geometry;
    geo.h_t = quantity_or(g, "h_t", "length", geo.h_t);
    geo.h_c = quantity_or(g, "h_c", "length", geo.h_c);
    geo.h_x = quantity_or(g, "h_x", "length", geo.h_x);
    geo.r_c = quantity_or(g, "r_c", "length", geo.r_c);
    geo.r_r = quantity_or(g, "r_r", "length", geo.r_r);
    geo.r_x = quantity_or(g, "r_x", "length", geo.r_x);
    geo.r_d = quantity_or(g, "r_d", "length", geo.r_d);
    geo.r_in = quantity_or(g, "r_in", "length", geo.r_in);
    geo.w_in = quantity_or(g, "w_in", "length", geo.w_in);
    geo.A_in = quantity_or(g, "A_in", "area", geo.A_in);
    geo.wall_thickness = quantity_or(g, "wall_thickness", "length", geo.wall_thickness);
  }
  if (j.contains("boundary")) {
    const json& b = j.at("boundary");
    cfg.V_in = quantity_or(b, "volumetric_inflow", "volumetric_flow", cfg.V_in);
    cfg.T_in = quantity_or(b, "T_in", "temperature", cfg.T_in);
    cfg.P_out = quantity_or(b, "P_out", "pressure", cfg.P_out);
    cfg.P_in = quantity_or(b, "P_in", "pressure", cfg.P_in);
    cfg.T_e = quantity_or(b, "T_e", "temperature", cfg.T_e);
    cfg.false_air = quantity_or(b, "false_air", "volumetric_flow", cfg.false_air);
  }
  if (j.contains("composition")) {
    const json& c = j.at("composition");
    if (c.contains("solids"))
      cfg.C_s_in = parse_composition(c.at("solids"), Phase::Solid, "composition.solids");
    if (c.contains("gases"))
      cfg.C_g_in = parse_composition(c.at("gases"), Phase::Gas, "composition.gases");
    cfg.composition_approximated =
        c.value("provenance", "") == "approximated-from-figure";
  }
  if (j.contains("flow")) {
    const json& f = j.at("flow");
    cfg.flow.d_m = quantity_or(f, "d_m", "length", cfg.flow.d_m);
    cfg.flow.d_med = quantity_or(f, "d_med", "length", cfg.flow.d_med);
    cfg.flow.d_p = quantity_or(f, "d_p", "length", cfg.flow.d_p);
    if (f.contains("f_N_inv")) {
      const double inv = quantity(f, "f_N_inv", "dimensionless");
      if (!(inv > 0)) throw ConfigError("flow.f_N_inv must be positive");
      cfg.flow.f_N = 1.0 / inv;
    } else if (f.contains("f_N")) {
      cfg.flow.f_N = quantity(f, "f_N", "dimensionless");
    }
    cfg.flow.f_c = quantity_or(f, "f_c", "dimensionless", cfg.flow.f_c);
    cfg.flow.f_D_scale = quantity_or(f, "f_D_scale", "dimensionless", cfg.flow.f_D_scale);
    cfg.flow.u_mf = quantity_or(f, "u_mf", "velocity", cfg.flow.u_mf);
  }
  if (j.contains("heat")) {
    const json& h = j.at("heat");
    cfg.heat.eps_p = quantity_or(h, "eps_p", "dimensionless", cfg.heat.eps_p);
    cfg.heat.eps_r = quantity_or(h, "eps_r", "dimensionless", cfg.heat.eps_r);
    cfg.heat.eps_w = quantity_or(h, "eps_w", "dimensionless", cfg.heat.eps_w);
    cfg.heat.eps_e = quantity_or(h, "eps_e", "dimensionless", cfg.heat.eps_e);
    cfg.heat.k_r = quantity_or(h, "k_r", "thermal_conductivity", cfg.heat.k_r);
    cfg.heat.k_w = quantity_or(h, "k_w", "thermal_conductivity", cfg.heat.k_w);
    cfg.heat.external_film =
        quantity_or(h, "external_film", "heat_transfer_coefficient", cfg.heat.external_film);
  }
  auto read_material = [&](const std::string& key, WallMaterial& m) {
    if (!j.contains(key)) return;
    const json& w = j.at(key);
    m.density = quantity_or(w, "density", "density", m.density);
    m.cp_mass = quantity_or(w, "cp", "specific_heat", m.cp_mass);
    m.conductivity = quantity_or(w, "conductivity", "thermal_conductivity", m.conductivity);
  };
  read_material("refractory", cfg.refractory);
  read_material("wall", cfg.wall);
  if (j.contains("tuning")) {
    const json& t = j.at("tuning");
    if (!t.is_array() || t.size() != kNumReactions)
      throw ConfigError("tuning must be an array of " + std::to_string(kNumReactions));
    for (int i = 0; i < kNumReactions; ++i) cfg.tuning[i] = t.at(i).get<double>();
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    cfg.solver.dt_init = quantity_or(s, "dt_init", "time", cfg.solver.dt_init);
    cfg.solver.dt_min = quantity_or(s, "dt_min", "time", cfg.solver.dt_min);
    cfg.solver.dt_max = quantity_or(s, "dt_max", "time", cfg.solver.dt_max);
    cfg.solver.step_rel_tol =
        quantity_or(s, "step_rel_tol", "dimensionless", cfg.solver.step_rel_tol);
    cfg.solver.newton_tol = quantity_or(s, "newton_tol", "dimensionless", cfg.solver.newton_tol);
    cfg.solver.steady_tol = quantity_or(s, "steady_tol", "dimensionless", cfg.solver.steady_tol);
    if (s.contains("max_newton")) cfg.solver.max_newton = s.at("max_newton").get<int>();
  }
  if (j.contains("t_end")) cfg.t_end = quantity(j, "t_end", "time");
  if (j.contains("calibration")) {
    const json& c = j.at("calibration");
    CalibrationTarget t = cfg.target.value_or(CalibrationTarget{});
    t.efficiency = quantity_or(c, "efficiency", "dimensionless", t.efficiency);
    t.solid_density = quantity_or(c, "solid_density", "density", t.solid_density);
    t.pressure = quantity_or(c, "pressure", "pressure", t.pressure);
    cfg.target = t;
  }
}

ScenarioConfig load_json(const json& j, const std::string& origin) {
  ScenarioConfig cfg;
  bool from_preset = false;
  if (j.contains("preset")) {
    cfg = load_preset(j.at("preset").get<std::string>());
    from_preset = true;
  }
  apply_overrides(cfg, j);
  if (!from_preset) {
    // A standalone file must carry everything; surface what is missing.
    for (const char* key : {"geometry", "boundary", "composition"})
      if (!j.contains(key))
        throw ConfigError(origin + ": missing required field '" + std::string(key) + "'");
  }
  cfg.validate();
  return cfg;
}

}  // namespace

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());  // carries byte position
  }
  try {
    return load_json(j, path);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ScenarioConfig load_preset(const std::string& name) {
  for (const std::string& p : preset_names())
    if (p == name) return load_scenario(default_data_dir() + "/presets/" + name + ".json");
  throw ConfigError("unknown preset '" + name + "' (expected cy1..cy5)");
}

void save_scenario(const ScenarioConfig& cfg, const std::string& path) {
  json j;
  j["name"] = cfg.name;
  json& g = j["geometry"];
  g["h_t"] = format_quantity(cfg.geometry.h_t, "m");
  g["h_c"] = format_quantity(cfg.geometry.h_c, "m");
  g["h_x"] = format_quantity(cfg.geometry.h_x, "m");
  g["r_c"] = format_quantity(cfg.geometry.r_c, "m");
  g["r_r"] = format_quantity(cfg.geometry.r_r, "m");
  g["r_x"] = format_quantity(cfg.geometry.r_x, "m");
  g["r_d"] = format_quantity(cfg.geometry.r_d, "m");
  g["r_in"] = format_quantity(cfg.geometry.r_in, "m");
  g["w_in"] = format_quantity(cfg.geometry.w_in, "m");
  g["A_in"] = format_quantity(cfg.geometry.A_in, "m2");
  g["wall_thickness"] = format_quantity(cfg.geometry.wall_thickness, "m");
  json& b = j["boundary"];
  b["volumetric_inflow"] = format_quantity(cfg.V_in, "m3/s");
  b["T_in"] = format_quantity(cfg.T_in, "K");
  b["P_out"] = format_quantity(cfg.P_out, "Pa");
  b["P_in"] = format_quantity(cfg.P_in, "Pa");
  b["T_e"] = format_quantity(cfg.T_e, "K");
  b["false_air"] = format_quantity(cfg.false_air, "m3/s");
  json& c = j["composition"];
  c["solids"] = composition_json(cfg.C_s_in, Phase::Solid);
  c["gases"] = composition_json(cfg.C_g_in, Phase::Gas);
  if (cfg.composition_approximated) c["provenance"] = "approximated-from-figure";
  json& f = j["flow"];
  f["d_m"] = format_quantity(cfg.flow.d_m, "m");
  f["d_med"] = format_quantity(cfg.flow.d_med, "m");
  f["d_p"] = format_quantity(cfg.flow.d_p, "m");
  f["f_N_inv"] = 1.0 / cfg.flow.f_N;
  f["f_c"] = cfg.flow.f_c;
  f["f_D_scale"] = cfg.flow.f_D_scale;
  f["u_mf"] = format_quantity(cfg.flow.u_mf, "m/s");
  json& h = j["heat"];
  h["eps_p"] = cfg.heat.eps_p;
  h["eps_r"] = cfg.heat.eps_r;
  h["eps_w"] = cfg.heat.eps_w;
  h["eps_e"] = cfg.heat.eps_e;
  h["k_r"] = format_quantity(cfg.heat.k_r, "W/(m*K)");
  h["k_w"] = format_quantity(cfg.heat.k_w, "W/(m*K)");
  h["external_film"] = format_quantity(cfg.heat.external_film, "W/(m2*K)");
  auto write_material = [&](const std::string& key, const WallMaterial& m) {
    json& w = j[key];
    w["density"] = format_quantity(m.density, "kg/m3");
    w["cp"] = format_quantity(m.cp_mass, "J/(kg*K)");
    w["conductivity"] = format_quantity(m.conductivity, "W/(m*K)");
  };
  write_material("refractory", cfg.refractory);
  write_material("wall", cfg.wall);
  j["tuning"] = cfg.tuning;
  json& s = j["solver"];
  s["dt_init"] = format_quantity(cfg.solver.dt_init, "s");
  s["dt_min"] = format_quantity(cfg.solver.dt_min, "s");
  s["dt_max"] = format_quantity(cfg.solver.dt_max, "s");
  s["step_rel_tol"] = cfg.solver.step_rel_tol;
  s["newton_tol"] = cfg.solver.newton_tol;
  s["steady_tol"] = cfg.solver.steady_tol;
  s["max_newton"] = cfg.solver.max_newton;
  j["t_end"] = format_quantity(cfg.t_end, "s");
  if (cfg.target) {
    json& t = j["calibration"];
    t["efficiency"] = cfg.target->efficiency;
    t["solid_density"] = format_quantity(cfg.target->solid_density, "kg/m3");
    t["pressure"] = format_quantity(cfg.target->pressure, "Pa");
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write scenario file: " + path);
  out << j.dump(2) << '\n';
}

CycloneModel make_model(const SpeciesDb& db, const ScenarioConfig& cfg) {
  ReactionSet reactions = ReactionSet::load_default(db);
  for (int i = 0; i < kNumReactions; ++i) reactions.set_tuning(i, cfg.tuning[i]);
  return CycloneModel(db, std::move(reactions), cfg.geometry, cfg.flow, cfg.heat,
                      cfg.refractory, cfg.wall, cfg.boundary(), cfg.solver);
}

SteadySummary summarize(const std::string& name, const CycloneModel& model,
                        const DifferentialState& x, const AlgebraicState& y) {
  const Report r = model.report(x, y);
  SteadySummary s;
  s.name = name;
  s.P = y.P;
  s.T_m = y.T_m;
  s.T_r = y.T_r;
  s.T_w = y.T_w;
  s.eta = r.eta;
  s.eta_sal = r.eta_sal;
  s.rho_s = r.rho_s;
  s.mdot_s_in = r.mdot_s_in;
  s.mdot_s_out = r.mdot_s_out;
  s.mdot_s_sep = r.mdot_s_sep;
  s.mdot_g_in = r.mdot_g_in;
  s.mdot_g_out = r.mdot_g_out;
  return s;
}

void write_summary(const SteadySummary& s, const std::string& path) {
  json j;
  j["name"] = s.name;
  j["P"] = format_quantity(s.P, "Pa");
  j["T_m"] = format_quantity(s.T_m, "K");
  j["T_r"] = format_quantity(s.T_r, "K");
  j["T_w"] = format_quantity(s.T_w, "K");
  j["eta"] = s.eta;
  j["eta_sal"] = s.eta_sal;
  j["rho_s"] = format_quantity(s.rho_s, "kg/m3");
  j["mdot_s_in"] = format_quantity(s.mdot_s_in, "kg/s");
  j["mdot_s_out"] = format_quantity(s.mdot_s_out, "kg/s");
  j["mdot_s_sep"] = format_quantity(s.mdot_s_sep, "kg/s");
  j["mdot_g_in"] = format_quantity(s.mdot_g_in, "kg/s");
  j["mdot_g_out"] = format_quantity(s.mdot_g_out, "kg/s");
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write summary file: " + path);
  out << j.dump(2) << '\n';
}

SteadySummary load_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open summary file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  SteadySummary s;
  try {
    s.name = j.at("name").get<std::string>();
    s.P = quantity(j, "P", "pressure");
    s.T_m = quantity(j, "T_m", "temperature");
    s.T_r = quantity(j, "T_r", "temperature");
    s.T_w = quantity(j, "T_w", "temperature");
    s.eta = quantity(j, "eta", "dimensionless");
    s.eta_sal = quantity(j, "eta_sal", "dimensionless");
    s.rho_s = quantity(j, "rho_s", "density");
    s.mdot_s_in = quantity(j, "mdot_s_in", "mass_flow");
    s.mdot_s_out = quantity(j, "mdot_s_out", "mass_flow");
    s.mdot_s_sep = quantity(j, "mdot_s_sep", "mass_flow");
    s.mdot_g_in = quantity(j, "mdot_g_in", "mass_flow");
    s.mdot_g_out = quantity(j, "mdot_g_out", "mass_flow");
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return s;
}

void write_csv(const TimeSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write CSV file: " + path);
  out.precision(17);
  out << "t,P,T_m,T_r,T_w";
  for (int sp = 0; sp < kNumSolids; ++sp) out << ",C_s_" << species_name(sp);
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp) out << ",C_g_" << species_name(sp);
  out << ",eta,eta_sal,rho_s,mdot_s_in,mdot_s_out,mdot_s_sep,mdot_g_in,mdot_g_out\n";
  for (const Sample& s : series) {
    out << s.t << ',' << s.y.P << ',' << s.y.T_m << ',' << s.y.T_r << ',' << s.y.T_w;
    for (int sp = 0; sp < kNumSolids; ++sp) out << ',' << s.x.C_s[sp];
    for (int sp = kNumSolids; sp < kNumSpecies; ++sp) out << ',' << s.x.C_g[sp];
    const Report& r = s.report;
    out << ',' << r.eta << ',' << r.eta_sal << ',' << r.rho_s << ',' << r.mdot_s_in
        << ',' << r.mdot_s_out << ',' << r.mdot_s_sep << ',' << r.mdot_g_in << ','
        << r.mdot_g_out << '\n';
  }
}

void write_plot_data(const TimeSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write plot file: " + path);
  out.precision(17);
  out << "quantity,t,value\n";
  auto emit = [&](const std::string& q, double t, double v) {
    out << q << ',' << t << ',' << v << '\n';
  };
  for (const Sample& s : series) {
    emit("P", s.t, s.y.P);
    emit("T_m", s.t, s.y.T_m);
    emit("T_r", s.t, s.y.T_r);
    emit("T_w", s.t, s.y.T_w);
    for (int sp = 0; sp < kNumSolids; ++sp)
      emit("C_s_" + species_name(sp), s.t, s.x.C_s[sp]);
    for (int sp = kNumSolids; sp < kNumSpecies; ++sp)
      emit("C_g_" + species_name(sp), s.t, s.x.C_g[sp]);
  }
}

ReferenceRow load_reference(const std::string& name) {
  const std::string path = default_data_dir() + "/reference/steady_tables.json";
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open reference table: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!j.contains(name)) throw ConfigError("no reference row for '" + name + "'");
  const json& r = j.at(name);
  ReferenceRow row;
  row.P = quantity(r, "P", "pressure");
  row.P_in = quantity(r, "P_in", "pressure");
  row.P_out = quantity(r, "P_out", "pressure");
  row.P_mean = quantity(r, "P_mean", "pressure");
  row.T = quantity(r, "T", "temperature");
  row.T_ref_in = quantity(r, "T_ref_in", "temperature");
  row.T_ref_out = quantity(r, "T_ref_out", "temperature");
  row.eta_sim = quantity(r, "eta_sim", "dimensionless");
  row.eta_ref = quantity(r, "eta_ref", "dimensionless");
  row.rho_s_sim = quantity(r, "rho_s_sim", "density");
  row.rho_s_ref = quantity(r, "rho_s_ref", "density");
  row.eta_sal = quantity(r, "eta_sal", "dimensionless");
  row.f_N_inv = quantity(r, "f_N_inv", "dimensionless");
  row.f_c = quantity(r, "f_c", "dimensionless");
  row.f_D_scale = quantity(r, "f_D_scale", "dimensionless");
  return row;
}

Tolerances parse_tolerances(const std::string& spec) {
  Tolerances tol;
  std::istringstream is(spec);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("bad tolerance entry '" + item + "' (expected key=value)");
    const std::string key = item.substr(0, eq);
    double value;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("bad tolerance value in '" + item + "'");
    }
    if (!(value > 0)) throw ConfigError("tolerance must be positive in '" + item + "'");
    if (key == "P")
      tol.P = value;
    else if (key == "T")
      tol.T = value;
    else if (key == "eta")
      tol.eta = value;
    else if (key == "rho_s")
      tol.rho_s_rel = value;
    else if (key == "eta_sal")
      tol.eta_sal = value;
    else
      throw ConfigError("unknown tolerance key '" + key + "'");
  }
  return tol;
}

DiffReport compare_report(const SteadySummary& s, const ReferenceRow& ref,
                          const Tolerances& tol) {
  DiffReport d;
  auto cell = [&](const std::string& name, double value, double reference,
                  double tolerance) {
    CellDiff c;
    c.cell = name;
    c.value = value;
    c.reference = reference;
    c.diff = value - reference;
    c.tolerance = tolerance;
    c.pass = std::abs(c.diff) <= tolerance;
    d.cells.push_back(c);
  };
  cell("P", s.P, ref.P, tol.P);
  cell("T_m", s.T_m, ref.T, tol.T);
  cell("eta", s.eta, ref.eta_sim, tol.eta);
  cell("rho_s", s.rho_s, ref.rho_s_sim, tol.rho_s_rel * ref.rho_s_sim);
  cell("eta_sal", s.eta_sal, ref.eta_sal, tol.eta_sal);
  d.pass = true;
  for (const CellDiff& c : d.cells) d.pass = d.pass && c.pass;
  return d;
}

std::string format_diff(const DiffReport& d) {
  std::ostringstream os;
  os.precision(6);
  for (const CellDiff& c : d.cells)
    os << (c.pass ? "  pass  " : "  FAIL  ") << c.cell << ": " << c.value << " vs "
       << c.reference << " (diff " << c.diff << ", tol " << c.tolerance << ")\n";
  os << (d.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace cyclone
