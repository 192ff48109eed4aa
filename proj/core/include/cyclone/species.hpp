#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclone/units.hpp"

namespace cyclone {

// Compiled-in species ordering: solids first, then gases. All per-species
// vectors (concentrations, mole vectors, stoichiometry rows) use this index.
enum Species : int {
  kCaCO3 = 0,
  kCaO,
  kSiO2,
  kAl2O3,
  kFe2O3,
  kC2S,
  kC3S,
  kC3A,
  kC4AF,
  kCO2,
  kN2,
  kO2,
  kAr,
  kCO,
  kCsus,
  kH2O,
  kH2,
  kNumSpecies
};

inline constexpr int kNumSolids = 9;
inline constexpr int kNumGases = kNumSpecies - kNumSolids;
inline constexpr int kNumElements = 9;  // Ca, Si, Al, Fe, C, O, H, N, Ar

enum class Phase { Solid, Gas };

inline constexpr Phase phase_of(int sp) {
  return sp < kNumSolids ? Phase::Solid : Phase::Gas;
}

// Per-species amounts. Semantics depend on context: moles (mol),
// concentrations (mol/m3), or mole fractions.
using SpeciesVec = std::array<double, kNumSpecies>;

SpeciesVec zero_vec();
const std::string& species_name(int sp);
int species_from_name(const std::string& name);

// Validated mole-fraction vector: non-negative, sums to 1 within 1e-12.
SpeciesVec make_fractions(const SpeciesVec& amounts);

// cp = C0 + C1 T + C2 T^2 on [T_lo, T_hi]; outside the range cp is clamped
// to the endpoint value and the evaluation is flagged.
struct CpPolynomial {
  double c0 = 0.0;  // J/(mol K)
  double c1 = 0.0;  // J/(mol K^2)
  double c2 = 0.0;  // J/(mol K^3)
  double t_lo = 0.0;
  double t_hi = 0.0;
};

struct CpModel {
  enum class Kind { Polynomial, CalciteSpecial } kind = Kind::Polynomial;
  CpPolynomial poly;  // also holds the range for CalciteSpecial

  // Raw model value at T, no clamping. The five-term calcite expression is
  // evaluated exactly as published.
  double evaluate(double T) const;
};

// Two-point table (T, value) with linear interpolation in between and
// constant extrapolation outside.
struct TwoPointTable {
  double t0 = 0.0, v0 = 0.0;
  double t1 = 0.0, v1 = 0.0;
  double operator()(double T) const;
};

struct SutherlandModel {
  double mu0 = 0.0;   // Pa s at T0
  double T0 = 0.0;    // K
  double S_mu = 0.0;  // K, fitted from the second tabulated point
};

struct SpeciesRecord {
  int id = -1;
  std::string name;
  Phase phase = Phase::Solid;
  std::array<int, kNumElements> atoms{};  // elemental composition
  double molar_mass = 0.0;       // kg/mol, computed from atoms
  double solid_density = 0.0;    // kg/m3, solids only
  double formation_enthalpy = 0.0;  // J/mol at (T_ref, P_ref)
  CpModel cp;
  double solid_conductivity = 0.0;           // W/(m K), solids only
  std::optional<TwoPointTable> gas_conductivity;  // gases
  std::optional<SutherlandModel> viscosity;       // gases
  double diffusion_volume = 0.0;  // cm^3; loaded but used by no correlation
};

// Pseudo-species data for the refractory lining and the steel wall.
struct WallMaterial {
  double density = 0.0;        // kg/m3
  double cp_mass = 0.0;        // J/(kg K)
  double conductivity = 0.0;   // W/(m K)
};

// Read-only after construction; safe to share across concurrent runs.
class SpeciesDb {
 public:
  // Loads the species data file (appendix tables + sourced formation
  // enthalpies). Validates units, molar masses against the tabulated
  // values, and the calcite cp expression (falling back to a constant when
  // the published coefficients evaluate outside [60, 120] J/(mol K) at 298 K).
  static SpeciesDb load(const std::string& path);
  static SpeciesDb load_default();

  // Movable despite the atomic diagnostic counter (its value carries over).
  SpeciesDb(SpeciesDb&& other) noexcept
      : refractory(other.refractory),
        wall(other.wall),
        records_(std::move(other.records_)),
        range_violations_(other.range_violations_.load()),
        calcite_fallback_(other.calcite_fallback_) {}
  SpeciesDb& operator=(SpeciesDb&&) = delete;
  SpeciesDb(const SpeciesDb&) = delete;

  const SpeciesRecord& record(int sp) const;

  double molar_mass(int sp) const { return records_[sp].molar_mass; }

  // Number of cp evaluations that fell outside the declared temperature
  // range since construction (clamped, not extrapolated).
  std::int64_t range_violations() const { return range_violations_.load(); }

  // Set when the published calcite cp failed plausibility validation and the
  // constant fallback is active.
  bool calcite_fallback_active() const { return calcite_fallback_; }

  WallMaterial refractory;  // defaults; overridable per scenario
  WallMaterial wall;

  // --- thermo-physical property evaluations -------------------------------

  double heat_capacity(int sp, double T) const;            // J/(mol K)
  double cp_integral(int sp, double T) const;              // J/mol from T_ref
  double enthalpy(double T, double P, const SpeciesVec& n) const;  // J
  double volume(double T, double P, const SpeciesVec& n, Phase phase) const;  // m3
  double phase_density(const SpeciesVec& C, Phase phase) const;  // kg/m3
  double sutherland_viscosity(int sp, double T) const;     // Pa s
  double gas_conductivity(int sp, double T) const;         // W/(m K)

  // Wilke mixture rule over the gas slice of C (concentrations or moles).
  double mixture_gas_viscosity(const SpeciesVec& C, double T) const;
  double mixture_gas_conductivity(const SpeciesVec& C, double T) const;

  // U_m = H_s + H_g - P*V_g per unit volume, with C_s, C_g as mol/m3.
  double mixture_internal_energy(double T_m, double P, const SpeciesVec& C_s,
                                 const SpeciesVec& C_g) const;

 private:
  SpeciesDb() = default;
  std::array<SpeciesRecord, kNumSpecies> records_{};
  mutable std::atomic<std::int64_t> range_violations_{0};
  bool calcite_fallback_ = false;
};

// Generic Wilke rule: value_i weighted by mole fractions x with the
// phi matrix built from viscosities and molar masses.
double wilke_mixture(std::span<const double> x, std::span<const double> value,
                     std::span<const double> mu, std::span<const double> M);

// mu_m = mu_g (1 + Vhat_s/2)/(1 - 2 Vhat_s); singular at Vhat_s = 0.5.
double suspension_viscosity(double mu_g, double Vhat_s);

// Layered (serial) conductivity: 1/k_m = Vhat_g/k_g + sum Vhat_si/k_si.
double serial_conductivity(double Vhat_g, double k_g,
                           std::span<const double> Vhat_s,
                           std::span<const double> k_s);

}  // namespace cyclone
