#include "cyclone/transport.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cyclone {

namespace {
constexpr double pi = std::numbers::pi;
}

void FlowParameters::validate() const {
  if (!(d_m > 0 && d_med > 0 && d_p > 0))
    throw std::invalid_argument("flow parameters: particle diameters must be positive");
  if (!(f_c > 0 && f_N > 0 && f_D_scale > 0 && u_mf > 0))
    throw std::invalid_argument("flow parameters: correction factors must be positive");
}

double gas_outlet_velocity(double P, double P_out, double rho_m, double mu_m,
                           double D_x, double h_x, double f_D_scale) {
  if (!(rho_m > 0) || !(mu_m > 0))
    throw std::domain_error("gas_outlet_velocity: density and viscosity must be positive");
  const double dP = P_out - P;
  if (dP == 0.0) return 0.0;
  const double coeff = 2.0 / (0.316 * f_D_scale);
  const double base =
      coeff * std::pow(std::pow(D_x, 5) / (mu_m * rho_m * rho_m * rho_m), 0.25) *
      std::abs(dP) / h_x;
  const double sign = dP < 0.0 ? 1.0 : -1.0;  // sgn(-dP/h_x)
  return sign * std::pow(base, 4.0 / 7.0);
}

double inlet_constriction(double beta, double c_0) {
  if (!(beta > 0) || beta > 1.0)
    throw std::domain_error("inlet_constriction: beta must be in (0, 1]");
  if (c_0 < 0) throw std::domain_error("inlet_constriction: negative load ratio");
  const double b2 = beta * (2.0 - beta);
  const double inner = std::sqrt(1.0 - b2 * (1.0 - beta * beta) / (1.0 + c_0));
  return (1.0 - std::sqrt(1.0 - b2 * inner)) / beta;
}

double wall_tangential_velocity(double r_in, double r_c, double alpha, double v_in) {
  return r_in / (r_c * alpha) * v_in;
}

double tangential_velocity(double r, double r_c, double v_theta_w, double f_S,
                           double A_sep, double A_in, double v_in) {
  if (!(r > 0) || r > r_c)
    throw std::domain_error("tangential_velocity: requires 0 < r <= r_c");
  if (v_in <= 0.0) return 0.0;
  const double ratio = r_c / r;
  const double friction =
      f_S * A_sep * v_theta_w / (2.0 * A_in * v_in) * std::sqrt(ratio);
  return ratio * v_theta_w / (1.0 + friction);
}

double separation_velocity(double d_m, double rho_s0, double rho_g, double mu_m,
                           double v_theta_req, double r_eq) {
  if (!(mu_m > 0) || !(r_eq > 0))
    throw std::domain_error("separation_velocity: mu_m and r_eq must be positive");
  const double delta_rho = rho_s0 - rho_g;
  if (delta_rho <= 0.0) return 0.0;
  return d_m * d_m * delta_rho / (18.0 * mu_m) * v_theta_req * v_theta_req / r_eq;
}

double cut_size(double mu_m, double A_in, double v_in, double delta_rho, double h_i,
                double v_theta_rx) {
  if (!(delta_rho > 0) || !(v_theta_rx > 0))
    return std::numeric_limits<double>::infinity();
  // 0.9: an assumed 10% of the gas short-circuits from inlet to outlet.
  return std::sqrt(18.0 * mu_m * 0.9 * A_in * v_in /
                   (delta_rho * 2.0 * pi * h_i * v_theta_rx * v_theta_rx));
}

double loading_limit(double f_c, double d_star, double d_med, double c_0) {
  if (c_0 <= 0.0) return 0.0;
  const double k = c_0 >= 0.1 ? 0.15 : -0.11 - 0.10 * std::log(c_0);
  return f_c * 0.025 * (d_star / d_med) * std::pow(10.0 * c_0, k);
}

double saltation_efficiency(double c_0, double c_0L) {
  if (c_0 <= 0.0) return 0.0;
  return 1.0 - std::min(1.0, c_0L / c_0);
}

double total_efficiency(double mdot_sep, double mdot_in) {
  if (!(mdot_in > 0)) throw std::domain_error("total_efficiency: zero inflow");
  return mdot_sep / mdot_in;
}

double InletState::load_ratio(const SpeciesDb& db) const {
  const double m_g = db.phase_density(C_g_in, Phase::Gas);
  if (m_g <= 0.0) return 0.0;
  return db.phase_density(C_s_in, Phase::Solid) / m_g;
}

MaterialFluxes material_fluxes(const SpeciesDb& db, const InletState& inlet,
                               const SpeciesVec& C_s, const SpeciesVec& C_g,
                               double P, double P_out, double rho_m, double mu_m,
                               double rho_g, double rho_s0,
                               const CycloneGeometry& geo, const DerivedGeometry& dg,
                               const FlowParameters& flow) {
  MaterialFluxes out;
  out.c_0 = inlet.load_ratio(db);

  // Swirl field from the inlet jet.
  double v_theta_req = 0.0, v_theta_rx = 0.0;
  if (inlet.v_in > 0.0) {
    const double beta = geo.w_in / geo.r_c;
    const double alpha = inlet_constriction(beta, out.c_0);
    const double v_theta_w =
        wall_tangential_velocity(geo.r_in, geo.r_c, alpha, inlet.v_in);
    const double f_S = drag_friction_factor(out.c_0);
    v_theta_req = tangential_velocity(dg.r_eq, geo.r_c, v_theta_w, f_S, dg.A_sep,
                                      geo.A_in, inlet.v_in);
    v_theta_rx = tangential_velocity(geo.r_x, geo.r_c, v_theta_w, f_S, dg.A_sep,
                                     geo.A_in, inlet.v_in);
  }
  out.v_theta_req = v_theta_req;

  out.v_s_sep =
      separation_velocity(flow.d_m, rho_s0, rho_g, mu_m, v_theta_req, dg.r_eq);

  const double delta_rho = rho_s0 - rho_g;
  out.d_star = inlet.v_in > 0.0
                   ? cut_size(mu_m, geo.A_in, inlet.v_in, delta_rho, dg.h_i, v_theta_rx)
                   : std::numeric_limits<double>::infinity();
  out.c_0L = std::isfinite(out.d_star)
                 ? loading_limit(flow.f_c, out.d_star, flow.d_med, out.c_0)
                 : std::numeric_limits<double>::infinity();
  out.eta_sal = std::isfinite(out.c_0L) ? saltation_efficiency(out.c_0, out.c_0L) : 0.0;

  out.v_g_x = gas_outlet_velocity(P, P_out, rho_m, mu_m, dg.D_x, geo.h_x, flow.f_D_scale);
  out.v_s_x = flow.f_N * out.v_g_x;

  for (int sp = 0; sp < kNumSolids; ++sp) {
    out.N_s_in[sp] = (1.0 - out.eta_sal) * inlet.v_in * inlet.C_s_in[sp];
    out.N_s_x[sp] = out.v_s_x * C_s[sp];
    out.N_s_sep[sp] = out.v_s_sep * C_s[sp];
  }
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp) {
    out.N_g_in[sp] = inlet.v_in * inlet.C_g_in[sp];
    out.N_g_x[sp] = out.v_g_x * C_g[sp];
  }
  return out;
}

}  // namespace cyclone
