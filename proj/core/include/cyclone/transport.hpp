#pragma once

#include <cmath>

#include "cyclone/geometry.hpp"
#include "cyclone/species.hpp"

namespace cyclone {

// Flow and separation correction factors. f_N is stored directly; configs
// accept its inverse for comparability with the calibration tables.
struct FlowParameters {
  double d_m = 5e-5;    // median particle diameter, m
  double d_med = 5e-5;  // median diameter in the loading limit, m
  double d_p = 5e-5;    // particle diameter in the Nusselt correlation, m
  double f_c = 1.0;     // loading-limit correction
  double f_N = 1.0;     // solid outlet velocity fraction of gas velocity
  double f_D_scale = 1.0;  // multiplies the 0.316 Darcy coefficient
  double u_mf = 0.16;   // minimum fluidization velocity, m/s

  void validate() const;
};

// Signed gas velocity through the outlet pipe; positive is outward
// (P > P_out). Turbulent Darcy-Weisbach closure.
double gas_outlet_velocity(double P, double P_out, double rho_m, double mu_m,
                           double D_x, double h_x, double f_D_scale);

// Inlet constriction coefficient from the slot ratio beta = w_in/r_c and
// the inlet load ratio c_0.
double inlet_constriction(double beta, double c_0);

// Wall tangential velocity at inlet level.
double wall_tangential_velocity(double r_in, double r_c, double alpha, double v_in);

// Tangential velocity at radius r with wall-friction decay.
double tangential_velocity(double r, double r_c, double v_theta_w, double f_S,
                           double A_sep, double A_in, double v_in);

inline double drag_friction_factor(double c_0) {
  return 0.005 * (1.0 + 3.0 * std::sqrt(c_0));
}

// Radial particle velocity at the equivalent-cylinder wall. Returns 0 when
// the density contrast is non-positive (buoyant particles do not separate).
double separation_velocity(double d_m, double rho_s0, double rho_g, double mu_m,
                           double v_theta_req, double r_eq);

// Particle cut size d* of the inner vortex.
double cut_size(double mu_m, double A_in, double v_in, double delta_rho, double h_i,
                double v_theta_rx);

// Loading limit c_0L of the Muschelknautz saltation model.
double loading_limit(double f_c, double d_star, double d_med, double c_0);

// eta_sal = 1 - min(1, c_0L/c_0).
double saltation_efficiency(double c_0, double c_0L);

// eta = separated mass rate / inflow mass rate.
double total_efficiency(double mdot_sep, double mdot_in);

// Per-port species fluxes, mol/(m^2 s).
struct MaterialFluxes {
  SpeciesVec N_s_in{};   // suspended-solid inflow (saltation already removed)
  SpeciesVec N_g_in{};   // gas inflow
  SpeciesVec N_s_x{};    // solid outflow through the vortex finder
  SpeciesVec N_g_x{};    // gas outflow
  SpeciesVec N_s_sep{};  // separation flux to the wall
  double v_g_x = 0.0;
  double v_s_x = 0.0;
  double v_s_sep = 0.0;
  double eta_sal = 0.0;
  double c_0 = 0.0;
  double c_0L = 0.0;
  double d_star = 0.0;
  double v_theta_req = 0.0;
};

// Inlet boundary stream.
struct InletState {
  double v_in = 0.0;  // m/s
  double T_in = 0.0;  // K
  SpeciesVec C_s_in{};  // mol/m^3 in the inflow stream
  SpeciesVec C_g_in{};

  // Solid-to-gas mass load ratio of the inflow.
  double load_ratio(const SpeciesDb& db) const;
};

MaterialFluxes material_fluxes(const SpeciesDb& db, const InletState& inlet,
                               const SpeciesVec& C_s, const SpeciesVec& C_g,
                               double P, double P_out, double rho_m, double mu_m,
                               double rho_g, double rho_s0,
                               const CycloneGeometry& geo, const DerivedGeometry& dg,
                               const FlowParameters& flow);

}  // namespace cyclone
