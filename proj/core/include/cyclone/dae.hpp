#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cyclone/geometry.hpp"
#include "cyclone/heat_transfer.hpp"
#include "cyclone/kinetics.hpp"
#include "cyclone/species.hpp"
#include "cyclone/transport.hpp"

namespace cyclone {

// Differential states: molar concentrations (mol per cyclone volume) and
// internal energy densities of mixture, refractory, and wall.
struct DifferentialState {
  SpeciesVec C_s{};  // solids slice used
  SpeciesVec C_g{};  // gas slice used
  double U_m = 0.0;  // J/m^3
  double U_r = 0.0;
  double U_w = 0.0;
};

struct AlgebraicState {
  double T_m = 0.0;  // K
  double T_r = 0.0;
  double T_w = 0.0;
  double P = 0.0;  // Pa
};

struct BoundaryConditions {
  double v_in = 0.0;   // m/s
  double T_in = 0.0;   // K
  SpeciesVec C_s_in{};  // mol/m^3 in the inflow stream
  SpeciesVec C_g_in{};
  double P_out = 0.0;  // Pa, above the top outlet
  double P_in = 0.0;   // Pa, reported riser-side pressure; used for dP_c only
  double T_e = 0.0;    // K ambient
  double false_air = 0.0;  // m^3/s at ambient conditions, 79/21 N2/O2
};

struct SolverSettings {
  double dt_init = 0.01;  // s
  double dt_min = 1e-6;
  double dt_max = 60.0;
  double step_rel_tol = 1e-3;   // step-doubling error control
  double newton_tol = 1e-8;     // scaled residual infinity norm
  int max_newton = 50;
  double steady_tol = 1e-9;
};

inline constexpr int kNumDiff = kNumSolids + kNumGases + 3;  // 20
inline constexpr int kNumAlg = 4;

// Derived per-sample reporting quantities.
struct Report {
  double eta = 0.0;       // total separation efficiency
  double eta_sal = 0.0;   // saltation part
  double rho_s = 0.0;     // kg/m^3 suspended solids
  double rho_g = 0.0;
  double Vhat_s = 0.0;
  double mdot_s_in = 0.0;   // kg/s raw solid inflow
  double mdot_s_out = 0.0;  // kg/s through the vortex finder
  double mdot_s_sep = 0.0;  // kg/s separated (saltation + wall flux)
  double mdot_g_in = 0.0;   // kg/s including false air
  double mdot_g_out = 0.0;
  double v_g_x = 0.0;
};

struct Sample {
  double t = 0.0;
  DifferentialState x;
  AlgebraicState y;
  Report report;
};

using TimeSeries = std::vector<Sample>;

struct SolverError : std::runtime_error {
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_norm(residual) {}
  double residual_norm = 0.0;
};

class CycloneModel {
 public:
  CycloneModel(const SpeciesDb& db, ReactionSet reactions, CycloneGeometry geo,
               FlowParameters flow, HeatTransferParams ht, WallMaterial refractory,
               WallMaterial wall, BoundaryConditions bc, SolverSettings solver = {});

  const SpeciesDb& db() const { return *db_; }
  const CycloneGeometry& geometry() const { return geo_; }
  const DerivedGeometry& derived() const { return dg_; }
  const BoundaryConditions& boundary() const { return bc_; }
  const SolverSettings& solver() const { return solver_; }
  FlowParameters& flow() { return flow_; }
  const FlowParameters& flow() const { return flow_; }

  // dx/dt of the mass and energy balances at (x, y).
  DifferentialState ode_rhs(const DifferentialState& x, const AlgebraicState& y) const;

  // [volume closure; U_m; U_r; U_w] residuals, unscaled.
  std::array<double, kNumAlg> algebraic_residual(const DifferentialState& x,
                                                 const AlgebraicState& y) const;

  // Solves the 4 algebraic equations for y at fixed x (damped Newton).
  AlgebraicState solve_algebraic(const DifferentialState& x,
                                 const AlgebraicState& y_guess) const;

  // One implicit-Euler step; solves x' = x + dt f(x', y'), g(x', y') = 0
  // simultaneously. Returns the Newton iteration count through `iters`.
  std::pair<DifferentialState, AlgebraicState> step(const DifferentialState& x,
                                                    const AlgebraicState& y, double dt,
                                                    int* iters = nullptr) const;

  // Adaptive implicit-Euler integration with step-doubling error control.
  TimeSeries simulate(const DifferentialState& x0, const AlgebraicState& y0,
                      double t_end) const;

  // Newton on [f; g] = 0 with pseudo-transient continuation fallback.
  std::pair<DifferentialState, AlgebraicState> steady_state(
      const DifferentialState& x_guess, const AlgebraicState& y_guess) const;

  // Consistent initial condition: solids uniform at 1 mol/m^3,
  // ambient-composition gas at (P_out, T_in), refractory and wall at T_e.
  std::pair<DifferentialState, AlgebraicState> initial_state() const;

  // Energy densities consistent with the given temperatures.
  DifferentialState energies_from_temperatures(SpeciesVec C_s, SpeciesVec C_g,
                                               double T_m, double T_r, double T_w,
                                               double P) const;

  Report report(const DifferentialState& x, const AlgebraicState& y) const;

  // Condition estimate of d(algebraic residual)/dy at (x, y); the index-1
  // probe. Logged per accepted step in debug contexts.
  double algebraic_jacobian_rcond(const DifferentialState& x, const AlgebraicState& y) const;

 private:
  struct RhsDetail;
  RhsDetail evaluate(const DifferentialState& x, const AlgebraicState& y) const;

  const SpeciesDb* db_;
  ReactionSet reactions_;
  CycloneGeometry geo_;
  DerivedGeometry dg_;
  FlowParameters flow_;
  HeatTransferParams ht_;
  WallMaterial refractory_;
  WallMaterial wall_;
  BoundaryConditions bc_;
  SolverSettings solver_;
};

// First time after which `value(sample)` stays within +/- band * |final|
// of its final value.
double settling_time(const TimeSeries& series,
                     const std::function<double(const Sample&)>& value,
                     double band = 0.01);

}  // namespace cyclone
