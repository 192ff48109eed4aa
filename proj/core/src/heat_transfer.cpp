#include "cyclone/heat_transfer.hpp"

#include <cmath>
#include <stdexcept>

namespace cyclone {

void HeatTransferParams::validate() const {
  auto in_unit = [](double e) { return e > 0.0 && e <= 1.0; };
  if (!in_unit(eps_p) || !in_unit(eps_r) || !in_unit(eps_w) || !in_unit(eps_e))
    throw std::invalid_argument("heat transfer: emissivities must be in (0, 1]");
  if (!(k_r > 0) || !(k_w > 0))
    throw std::invalid_argument("heat transfer: conductivities must be positive");
  if (external_film < 0)
    throw std::invalid_argument("heat transfer: negative film coefficient");
}

OverallCoefficients overall_convection_coefficients(const CycloneGeometry& geo,
                                                    const DerivedGeometry& dg,
                                                    double beta_m, double k_r, double k_w,
                                                    double external_film) {
  if (!(beta_m > 0)) throw std::domain_error("overall coefficients: beta_m must be positive");
  const double r_mid_r = 0.5 * (geo.r_c + geo.r_r);
  const double r_w = geo.r_w();
  const double r_mid_w = 0.5 * (geo.r_r + r_w);

  OverallCoefficients cf;
  cf.Ab_cr = 1.0 / (1.0 / (dg.A_c * beta_m) +
                    curved_wall_depth(geo.r_c, r_mid_r) /
                        (k_r * 0.5 * (dg.A_c + dg.A_r)));
  cf.Ab_rw = 1.0 / (curved_wall_depth(r_mid_r, geo.r_r) / (k_r * dg.A_r) +
                    curved_wall_depth(geo.r_r, r_mid_w) /
                        (k_w * 0.5 * (dg.A_r + dg.A_w)));
  double R_we = curved_wall_depth(r_mid_w, r_w) / (k_w * dg.A_w);
  if (external_film > 0.0) R_we += 1.0 / (dg.A_w * external_film);
  cf.Ab_we = 1.0 / R_we;
  return cf;
}

double mixture_convection_coefficient(double k_m, double D_H, double Nu_m) {
  if (!(D_H > 0)) throw std::domain_error("mixture convection: D_H must be positive");
  return k_m / D_H * Nu_m;
}

double nusselt(double v_in, double u_mf, double d_c, double d_p, double Re,
               double rho_s, double rho_g, double c_ps, double c_pg, double k_s,
               double k_g, double dP_c) {
  if (!(u_mf > 0) || !(d_p > 0) || !(rho_g > 0))
    throw std::domain_error("nusselt: u_mf, d_p, rho_g must be positive");
  if (v_in <= 0.0) return 702.8;  // no inflow: leading constant only
  const double flow_term = (v_in / u_mf) * (d_c / d_p) * Re;
  double Nu = 702.8 + 9.5e-8 * flow_term;
  if (rho_s > 0.0) {
    const double load = (rho_s / rho_g) * (c_ps / c_pg) * (k_s / k_g);
    const double euler = dP_c / (0.5 * rho_g * v_in * v_in);
    Nu += (0.03 + 1.2e-13 * flow_term) * load * euler;
  }
  return Nu;
}

ConvectiveHeats convective_heats(double T_m, double T_r, double T_w, double T_e,
                                 const OverallCoefficients& cf) {
  ConvectiveHeats q;
  q.Q_cr = cf.Ab_cr * (T_m - T_r);
  q.Q_rw = cf.Ab_rw * (T_r - T_w);
  q.Q_we = cf.Ab_we * (T_w - T_e);
  return q;
}

RadiativeHeats radiative_heats(double T_m, double T_r, double T_w, double T_e,
                               const HeatTransferParams& p, double A_p, double A_w) {
  RadiativeHeats q;
  const double F_pr = 1.0 / (1.0 / p.eps_p + 1.0 / p.eps_r - 1.0);
  const double T_m4 = std::pow(T_m, 4), T_r4 = std::pow(T_r, 4);
  q.Q_cr = constants::sigma_sb * A_p * F_pr * (T_m4 - T_r4);
  q.Q_we = constants::sigma_sb * A_w *
           (p.eps_w * std::pow(T_w, 4) - p.eps_e * std::pow(T_e, 4));
  return q;
}

}  // namespace cyclone
