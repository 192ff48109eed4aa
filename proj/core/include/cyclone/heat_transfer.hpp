#pragma once

#include "cyclone/geometry.hpp"
#include "cyclone/species.hpp"
#include "cyclone/units.hpp"

namespace cyclone {

struct HeatTransferParams {
  double eps_p = 0.9;  // particle emissivity
  double eps_r = 0.8;  // refractory emissivity
  double eps_w = 0.8;  // wall emissivity
  double eps_e = 1.0;  // environment emissivity
  double k_r = 1.5;    // refractory conductivity, W/(m K)
  double k_w = 45.0;   // wall conductivity, W/(m K)
  double external_film = 0.0;  // optional wall-environment film coefficient, W/(m^2 K); 0 = off

  void validate() const;
};

struct OverallCoefficients {
  double Ab_cr = 0.0;  // mixture -> refractory, W/K
  double Ab_rw = 0.0;  // refractory -> wall, W/K
  double Ab_we = 0.0;  // wall -> environment, W/K
};

// Series resistances with temperatures at the center of each layer.
OverallCoefficients overall_convection_coefficients(const CycloneGeometry& geo,
                                                    const DerivedGeometry& dg,
                                                    double beta_m, double k_r, double k_w,
                                                    double external_film = 0.0);

// beta_m = (k_m / D_H) Nu_m.
double mixture_convection_coefficient(double k_m, double D_H, double Nu_m);

// Two-term fluidized-suspension Nusselt correlation. Falls back to the
// leading constant when there is no inflow.
double nusselt(double v_in, double u_mf, double d_c, double d_p, double Re,
               double rho_s, double rho_g, double c_ps, double c_pg, double k_s,
               double k_g, double dP_c);

struct ConvectiveHeats {
  double Q_cr = 0.0;  // W, positive from mixture into refractory
  double Q_rw = 0.0;
  double Q_we = 0.0;
};

ConvectiveHeats convective_heats(double T_m, double T_r, double T_w, double T_e,
                                 const OverallCoefficients& cf);

struct RadiativeHeats {
  double Q_cr = 0.0;  // particle cloud -> refractory
  double Q_we = 0.0;  // wall -> environment
};

// A_p = A_c * Vhat_s is the radiating particle area.
RadiativeHeats radiative_heats(double T_m, double T_r, double T_w, double T_e,
                               const HeatTransferParams& p, double A_p, double A_w);

}  // namespace cyclone
