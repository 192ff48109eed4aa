#include "cyclone/species.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace cyclone {

using json = nlohmann::json;

namespace {

const std::array<std::string, kNumSpecies> kNames = {
    "CaCO3", "CaO", "SiO2", "Al2O3", "Fe2O3", "C2S", "C3S", "C3A", "C4AF",
    "CO2",   "N2",  "O2",   "Ar",    "CO",    "Csus", "H2O", "H2"};

const std::array<std::string, kNumElements> kElements = {
    "Ca", "Si", "Al", "Fe", "C", "O", "H", "N", "Ar"};

int element_index(const std::string& el) {
  for (int i = 0; i < kNumElements; ++i)
    if (kElements[i] == el) return i;
  throw std::invalid_argument("unknown element: " + el);
}

// Solves f(S) = mu0 (T1/T0)^{3/2} (T0+S)/(T1+S) - mu1 = 0 by bisection.
double fit_sutherland(double T0, double mu0, double T1, double mu1) {
  const double r = std::pow(T1 / T0, 1.5);
  auto f = [&](double S) { return mu0 * r * (T0 + S) / (T1 + S) - mu1; };
  double lo = -T0 * (1.0 - 1e-12);
  double hi = 1e7;
  if (f(lo) * f(hi) > 0)
    throw std::runtime_error("Sutherland fit: no bracket for the tabulated viscosity pair");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(lo) * f(mid) <= 0)
      hi = mid;
    else
      lo = mid;
    if (std::abs(f(mid)) < 1e-10 * mu1 && (hi - lo) < 1e-8 * (std::abs(mid) + T0)) break;
  }
  return 0.5 * (lo + hi);
}

double get_quantity(const json& j, const std::string& key, const std::string& dim) {
  if (!j.contains(key))
    throw std::invalid_argument("species data: missing field '" + key + "'");
  return parse_quantity(j.at(key).get<std::string>(), dim);
}

TwoPointTable read_two_point(const json& arr, const std::string& dim) {
  TwoPointTable t;
  t.t0 = parse_quantity(arr.at(0).at(0).get<std::string>(), "temperature");
  t.v0 = parse_quantity(arr.at(0).at(1).get<std::string>(), dim);
  t.t1 = parse_quantity(arr.at(1).at(0).get<std::string>(), "temperature");
  t.v1 = parse_quantity(arr.at(1).at(1).get<std::string>(), dim);
  if (t.t1 <= t.t0) throw std::invalid_argument("two-point table: temperatures not increasing");
  return t;
}

}  // namespace

SpeciesVec zero_vec() {
  SpeciesVec v{};
  v.fill(0.0);
  return v;
}

const std::string& species_name(int sp) {
  if (sp < 0 || sp >= kNumSpecies) throw std::out_of_range("species index out of range");
  return kNames[sp];
}

int species_from_name(const std::string& name) {
  for (int i = 0; i < kNumSpecies; ++i)
    if (kNames[i] == name) return i;
  throw std::out_of_range("unknown species: " + name);
}

SpeciesVec make_fractions(const SpeciesVec& amounts) {
  double sum = 0.0;
  for (double a : amounts) {
    if (a < 0) throw std::invalid_argument("mole fractions: negative entry");
    sum += a;
  }
  if (sum <= 0) throw std::invalid_argument("mole fractions: empty composition");
  SpeciesVec x = amounts;
  for (double& v : x) v /= sum;
  return x;
}

double CpModel::evaluate(double T) const {
  if (kind == Kind::CalciteSpecial) {
    // Five-term CaCO3 expression, evaluated exactly as published.
    return -184.79 + 0.32e-3 * T - 0.13e-5 * T * T - 3.69e6 / (T * T) +
           3883.5 / std::sqrt(T);
  }
  return poly.c0 + poly.c1 * T + poly.c2 * T * T;
}

double TwoPointTable::operator()(double T) const {
  if (T <= t0) return v0;
  if (T >= t1) return v1;
  return v0 + (v1 - v0) * (T - t0) / (t1 - t0);
}

SpeciesDb SpeciesDb::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open species data file: " + path);
  json j = json::parse(in);

  std::array<double, kNumElements> atomic_mass{};
  for (int e = 0; e < kNumElements; ++e)
    atomic_mass[e] =
        parse_quantity(j.at("atomic_masses").at(kElements[e]).get<std::string>(), "molar_mass");

  SpeciesDb db;
  std::array<bool, kNumSpecies> seen{};
  for (const auto& js : j.at("species")) {
    const int sp = species_from_name(js.at("name").get<std::string>());
    seen[sp] = true;
    SpeciesRecord& rec = db.records_[sp];
    rec.id = sp;
    rec.name = kNames[sp];
    rec.phase = js.at("phase").get<std::string>() == "solid" ? Phase::Solid : Phase::Gas;
    if (rec.phase != phase_of(sp))
      throw std::invalid_argument(rec.name + ": phase does not match the species ordering");

    for (const auto& [el, count] : js.at("formula").items())
      rec.atoms[element_index(el)] = count.get<int>();
    rec.molar_mass = 0.0;
    for (int e = 0; e < kNumElements; ++e) rec.molar_mass += rec.atoms[e] * atomic_mass[e];
    if (rec.molar_mass <= 0) throw std::invalid_argument(rec.name + ": empty formula");
    const double tabulated = get_quantity(js, "tabulated_molar_mass", "molar_mass");
    if (std::abs(rec.molar_mass - tabulated) > 0.02e-3)
      throw std::invalid_argument(rec.name + ": formula molar mass disagrees with the table");

    rec.formation_enthalpy = get_quantity(js, "formation_enthalpy", "molar_energy");

    const json& cp = js.at("cp");
    rec.cp.poly.t_lo = parse_quantity(cp.at("range").at(0).get<std::string>(), "temperature");
    rec.cp.poly.t_hi = parse_quantity(cp.at("range").at(1).get<std::string>(), "temperature");
    if (cp.at("model").get<std::string>() == "calcite") {
      rec.cp.kind = CpModel::Kind::CalciteSpecial;
    } else {
      rec.cp.kind = CpModel::Kind::Polynomial;
      // Table units: C1 in 1e-3 J/(mol K^2), C2 in 1e-5 J/(mol K^3).
      rec.cp.poly.c0 = cp.at("C0").get<double>();
      rec.cp.poly.c1 = cp.at("C1").get<double>() * 1e-3;
      rec.cp.poly.c2 = cp.at("C2").get<double>() * 1e-5;
    }

    if (rec.phase == Phase::Solid) {
      rec.solid_density = get_quantity(js, "density", "density");
      rec.solid_conductivity = get_quantity(js, "conductivity", "thermal_conductivity");
      if (rec.solid_density <= 0 || rec.solid_conductivity <= 0)
        throw std::invalid_argument(rec.name + ": nonpositive solid property");
    } else {
      if (js.contains("conductivity"))
        rec.gas_conductivity = read_two_point(js.at("conductivity"), "thermal_conductivity");
      if (js.contains("viscosity")) {
        TwoPointTable mu = read_two_point(js.at("viscosity"), "viscosity");
        SutherlandModel model;
        model.T0 = mu.t0;
        model.mu0 = mu.v0;
        model.S_mu = fit_sutherland(mu.t0, mu.v0, mu.t1, mu.v1);
        rec.viscosity = model;
      }
      if (js.contains("diffusion_volume_cm3"))
        rec.diffusion_volume = js.at("diffusion_volume_cm3").get<double>();
    }
  }
  for (int sp = 0; sp < kNumSpecies; ++sp)
    if (!seen[sp]) throw std::runtime_error("species data file is missing " + kNames[sp]);

  // Plausibility gate on the published calcite cp; the printed coefficients
  // evaluate far outside a physical band at 298 K, in which case a constant
  // cp from reference data takes over.
  const double calcite_298 = db.records_[kCaCO3].cp.evaluate(constants::T_ref);
  if (calcite_298 < 60.0 || calcite_298 > 120.0) {
    const double fallback =
        parse_quantity(j.at("calcite_cp_fallback").get<std::string>(), "molar_heat_capacity");
    db.records_[kCaCO3].cp.kind = CpModel::Kind::Polynomial;
    db.records_[kCaCO3].cp.poly.c0 = fallback;
    db.records_[kCaCO3].cp.poly.c1 = 0.0;
    db.records_[kCaCO3].cp.poly.c2 = 0.0;
    db.calcite_fallback_ = true;
  }

  auto read_material = [&](const std::string& key) {
    const json& jm = j.at("materials").at(key);
    WallMaterial m;
    m.density = parse_quantity(jm.at("density").get<std::string>(), "density");
    m.cp_mass = parse_quantity(jm.at("cp").get<std::string>(), "specific_heat");
    m.conductivity = parse_quantity(jm.at("conductivity").get<std::string>(), "thermal_conductivity");
    return m;
  };
  db.refractory = read_material("refractory");
  db.wall = read_material("wall");

  // Cross-check the sourced formation enthalpies against the published
  // calcination reaction enthalpy.
  const double dHr = db.records_[kCaO].formation_enthalpy +
                     db.records_[kCO2].formation_enthalpy -
                     db.records_[kCaCO3].formation_enthalpy;
  if (std::abs(dHr - 179.4e3) > 2.0e3)
    throw std::runtime_error("species data: calcination enthalpy check failed");

  return db;
}

SpeciesDb SpeciesDb::load_default() {
  return load(default_data_dir() + "/species.json");
}

const SpeciesRecord& SpeciesDb::record(int sp) const {
  if (sp < 0 || sp >= kNumSpecies) throw std::out_of_range("species index out of range");
  return records_[sp];
}

double SpeciesDb::heat_capacity(int sp, double T) const {
  if (T <= 0) throw std::domain_error("heat_capacity: T must be positive");
  const CpModel& cp = record(sp).cp;
  const double t = std::clamp(T, cp.poly.t_lo, cp.poly.t_hi);
  if (t != T) range_violations_.fetch_add(1, std::memory_order_relaxed);
  return cp.evaluate(t);
}

namespace {

// Antiderivative of the cp model on its valid range.
double cp_antiderivative(const CpModel& cp, double T) {
  if (cp.kind == CpModel::Kind::CalciteSpecial)
    return -184.79 * T + 0.16e-3 * T * T - (0.13e-5 / 3.0) * T * T * T +
           3.69e6 / T + 2.0 * 3883.5 * std::sqrt(T);
  return cp.poly.c0 * T + 0.5 * cp.poly.c1 * T * T + (cp.poly.c2 / 3.0) * T * T * T;
}

// Integral of the range-clamped cp over [a, b], a <= b.
double cp_segment(const CpModel& cp, double a, double b) {
  const double lo = cp.poly.t_lo, hi = cp.poly.t_hi;
  double out = 0.0;
  if (a < lo) out += cp.evaluate(lo) * (std::min(b, lo) - a);
  const double ma = std::max(a, lo), mb = std::min(b, hi);
  if (mb > ma) out += cp_antiderivative(cp, mb) - cp_antiderivative(cp, ma);
  if (b > hi) out += cp.evaluate(hi) * (b - std::max(a, hi));
  return out;
}

}  // namespace

double SpeciesDb::cp_integral(int sp, double T) const {
  if (T <= 0) throw std::domain_error("cp_integral: T must be positive");
  const CpModel& cp = record(sp).cp;
  if (T >= constants::T_ref) return cp_segment(cp, constants::T_ref, T);
  return -cp_segment(cp, T, constants::T_ref);
}

double SpeciesDb::enthalpy(double T, double /*P*/, const SpeciesVec& n) const {
  if (T <= 0) throw std::domain_error("enthalpy: T must be positive");
  double H = 0.0;
  for (int sp = 0; sp < kNumSpecies; ++sp) {
    if (n[sp] == 0.0) continue;
    H += n[sp] * (records_[sp].formation_enthalpy + cp_integral(sp, T));
  }
  return H;
}

double SpeciesDb::volume(double T, double P, const SpeciesVec& n, Phase phase) const {
  if (T <= 0) throw std::domain_error("volume: T must be positive");
  double V = 0.0;
  if (phase == Phase::Solid) {
    for (int sp = 0; sp < kNumSolids; ++sp)
      V += n[sp] * records_[sp].molar_mass / records_[sp].solid_density;
  } else {
    if (P <= 0) throw std::domain_error("volume: P must be positive for the gas phase");
    double total = 0.0;
    for (int sp = kNumSolids; sp < kNumSpecies; ++sp) total += n[sp];
    V = total * constants::R_gas * T / P;
  }
  return V;
}

double SpeciesDb::phase_density(const SpeciesVec& C, Phase phase) const {
  double rho = 0.0;
  const int b = phase == Phase::Solid ? 0 : kNumSolids;
  const int e = phase == Phase::Solid ? kNumSolids : kNumSpecies;
  for (int sp = b; sp < e; ++sp) {
    if (C[sp] < 0) throw std::domain_error("phase_density: negative concentration");
    rho += records_[sp].molar_mass * C[sp];
  }
  return rho;
}

double SpeciesDb::sutherland_viscosity(int sp, double T) const {
  const auto& model = record(sp).viscosity;
  if (!model) throw std::domain_error(species_name(sp) + ": no viscosity model");
  const double T0 = model->T0, S = model->S_mu;
  return model->mu0 * std::pow(T / T0, 1.5) * (T0 + S) / (T + S);
}

double SpeciesDb::gas_conductivity(int sp, double T) const {
  const auto& table = record(sp).gas_conductivity;
  if (!table) throw std::domain_error(species_name(sp) + ": no conductivity model");
  return (*table)(T);
}

double wilke_mixture(std::span<const double> x, std::span<const double> value,
                     std::span<const double> mu, std::span<const double> M) {
  const size_t n = x.size();
  double out = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double denom = 0.0;
    for (size_t j = 0; j < n; ++j) {
      const double phi =
          std::pow(1.0 + std::sqrt(mu[i] / mu[j]) * std::pow(M[j] / M[i], 0.25), 2) /
          (2.0 * std::sqrt(2.0) * std::sqrt(1.0 + M[i] / M[j]));
      denom += x[j] * phi;
    }
    out += x[i] * value[i] / denom;
  }
  return out;
}

namespace {

// Compacts the gas slice of C into (x, mu, k, M) for species actually present.
struct GasMix {
  std::vector<double> x, mu, k, M;
};

GasMix gas_mix(const SpeciesDb& db, const SpeciesVec& C, double T) {
  GasMix m;
  double total = 0.0;
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp) {
    if (C[sp] < 0) throw std::domain_error("gas mixture: negative concentration");
    total += C[sp];
  }
  if (total <= 0) throw std::domain_error("gas mixture: empty gas phase");
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp) {
    if (C[sp] == 0.0) continue;
    if (!db.record(sp).viscosity)
      throw std::domain_error(species_name(sp) + ": present in gas mixture but has no transport data");
    m.x.push_back(C[sp] / total);
    m.mu.push_back(db.sutherland_viscosity(sp, T));
    m.k.push_back(db.gas_conductivity(sp, T));
    m.M.push_back(db.molar_mass(sp));
  }
  return m;
}

}  // namespace

double SpeciesDb::mixture_gas_viscosity(const SpeciesVec& C, double T) const {
  GasMix m = gas_mix(*this, C, T);
  return wilke_mixture(m.x, m.mu, m.mu, m.M);
}

double SpeciesDb::mixture_gas_conductivity(const SpeciesVec& C, double T) const {
  GasMix m = gas_mix(*this, C, T);
  return wilke_mixture(m.x, m.k, m.mu, m.M);
}

double SpeciesDb::mixture_internal_energy(double T_m, double P, const SpeciesVec& C_s,
                                          const SpeciesVec& C_g) const {
  double H = 0.0;
  double n_gas = 0.0;
  for (int sp = 0; sp < kNumSolids; ++sp)
    if (C_s[sp] != 0.0)
      H += C_s[sp] * (records_[sp].formation_enthalpy + cp_integral(sp, T_m));
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp)
    if (C_g[sp] != 0.0) {
      H += C_g[sp] * (records_[sp].formation_enthalpy + cp_integral(sp, T_m));
      n_gas += C_g[sp];
    }
  // P * Vhat_g = sum C_g R T for an ideal gas, independent of P.
  (void)P;
  return H - n_gas * constants::R_gas * T_m;
}

double suspension_viscosity(double mu_g, double Vhat_s) {
  if (Vhat_s < 0.0) throw std::domain_error("suspension_viscosity: negative solid fraction");
  if (Vhat_s >= 0.5)
    throw std::domain_error("suspension_viscosity: solid volume fraction at or past the 0.5 pole");
  return mu_g * (1.0 + 0.5 * Vhat_s) / (1.0 - 2.0 * Vhat_s);
}

double serial_conductivity(double Vhat_g, double k_g, std::span<const double> Vhat_s,
                           std::span<const double> k_s) {
  if (Vhat_s.size() != k_s.size())
    throw std::invalid_argument("serial_conductivity: mismatched spans");
  double inv = Vhat_g / k_g;
  double total = Vhat_g;
  for (size_t i = 0; i < Vhat_s.size(); ++i) {
    inv += Vhat_s[i] / k_s[i];
    total += Vhat_s[i];
  }
  if (total > 1.0 + 1e-9)
    throw std::domain_error("serial_conductivity: volume fractions exceed 1");
  if (inv <= 0) throw std::domain_error("serial_conductivity: empty mixture");
  return 1.0 / inv;
}

}  // namespace cyclone
