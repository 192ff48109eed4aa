#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cyclone/transport.hpp"

using namespace cyclone;

namespace {

const SpeciesDb& db() {
  static SpeciesDb instance = SpeciesDb::load_default();
  return instance;
}

CycloneGeometry cy1_dims() {
  CycloneGeometry g;
  g.h_t = 18.3;
  g.h_c = 7.4;
  g.h_x = 3.5;
  g.r_c = 3.5;
  g.r_r = 3.6;
  g.r_x = 1.9;
  g.r_d = 0.3;
  g.r_in = 2.8;
  g.w_in = 1.4;
  g.A_in = 11.0;
  return g;
}

}  // namespace

TEST_CASE("gas outlet velocity: sign, symmetry, frozen value") {
  CHECK(gas_outlet_velocity(94520.0, 94520.0, 1.0, 2e-5, 3.8, 3.5, 410.0) == 0.0);
  const double v = gas_outlet_velocity(95290.0, 94520.0, 1.0, 2e-5, 3.8, 3.5, 410.0);
  CHECK(v > 0.0);  // inside pressure above the outlet drives outward flow
  CHECK(v == doctest::Approx(24.4810874432374).epsilon(1e-12));
  // Odd in the pressure difference.
  const double back = gas_outlet_velocity(94520.0 - 770.0, 94520.0, 1.0, 2e-5, 3.8, 3.5, 410.0);
  CHECK(back == doctest::Approx(-v).epsilon(1e-14));
  // More friction scaling, less flow.
  CHECK(gas_outlet_velocity(95290.0, 94520.0, 1.0, 2e-5, 3.8, 3.5, 820.0) < v);
  CHECK_THROWS_AS(gas_outlet_velocity(95290.0, 94520.0, 0.0, 2e-5, 3.8, 3.5, 410.0),
                  std::domain_error);
}

TEST_CASE("inlet constriction coefficient") {
  CHECK(inlet_constriction(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(inlet_constriction(1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(inlet_constriction(0.4, 0.0) == doctest::Approx(0.62117057719441).epsilon(1e-12));
  // Heavier loading widens the jet: alpha grows with c_0 at fixed beta.
  double prev = inlet_constriction(0.4, 0.0);
  for (double c0 = 0.5; c0 <= 2.0; c0 += 0.5) {
    const double a = inlet_constriction(0.4, c0);
    CHECK(a > prev);
    prev = a;
  }
  CHECK_THROWS_AS(inlet_constriction(0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(inlet_constriction(1.5, 0.1), std::domain_error);
  CHECK_THROWS_AS(inlet_constriction(0.4, -0.1), std::domain_error);
}

TEST_CASE("tangential velocity field") {
  const double v_theta_w = wall_tangential_velocity(2.8, 3.5, 0.62, 15.7);
  CHECK(v_theta_w == doctest::Approx(2.8 / (3.5 * 0.62) * 15.7).epsilon(1e-14));
  // Friction-free wall value is recovered at r = r_c.
  CHECK(tangential_velocity(3.5, 3.5, v_theta_w, 0.0, 400.0, 11.0, 15.7) ==
        doctest::Approx(v_theta_w).epsilon(1e-14));
  // Wall friction always slows the vortex.
  const double with_friction = tangential_velocity(3.5, 3.5, v_theta_w, 0.005, 400.0, 11.0, 15.7);
  CHECK(with_friction < v_theta_w);
  // The vortex spins up toward the axis.
  CHECK(tangential_velocity(1.9, 3.5, v_theta_w, 0.005, 400.0, 11.0, 15.7) > with_friction);
  CHECK(drag_friction_factor(0.0) == doctest::Approx(0.005));
  CHECK(drag_friction_factor(1.0) == doctest::Approx(0.02));
  CHECK_THROWS_AS(tangential_velocity(4.0, 3.5, v_theta_w, 0.005, 400.0, 11.0, 15.7),
                  std::domain_error);
}

TEST_CASE("separation velocity: Stokes scaling and buoyancy guard") {
  CHECK(separation_velocity(5e-5, 2710.0, 0.6, 2e-5, 0.0, 3.0) == 0.0);
  const double v1 = separation_velocity(5e-5, 2710.0, 0.6, 2e-5, 20.0, 3.0);
  // Hand value: d^2 (rho_s - rho_g)/(18 mu) * v^2/r.
  CHECK(v1 == doctest::Approx(25e-10 * 2709.4 / (18.0 * 2e-5) * 400.0 / 3.0).epsilon(1e-12));
  // Doubling the particle size quadruples the drift.
  CHECK(separation_velocity(1e-4, 2710.0, 0.6, 2e-5, 20.0, 3.0) ==
        doctest::Approx(4.0 * v1).epsilon(1e-12));
  // Buoyant particles do not separate.
  CHECK(separation_velocity(5e-5, 0.5, 0.6, 2e-5, 20.0, 3.0) == 0.0);
}

TEST_CASE("cut size scaling") {
  const double d1 = cut_size(2e-5, 11.0, 15.7, 2709.0, 14.8, 40.0);
  CHECK(d1 > 0.0);
  // Quadrupling the inflow at fixed swirl doubles the cut size.
  CHECK(cut_size(2e-5, 11.0, 4.0 * 15.7, 2709.0, 14.8, 40.0) ==
        doctest::Approx(2.0 * d1).epsilon(1e-12));
  // A faster vortex separates finer particles.
  CHECK(cut_size(2e-5, 11.0, 15.7, 2709.0, 14.8, 80.0) < d1);
  CHECK(std::isinf(cut_size(2e-5, 11.0, 15.7, -1.0, 14.8, 40.0)));
}

TEST_CASE("loading limit branches at c_0 = 0.1") {
  // Exponent k = 0.15 above the knee, -0.11 - 0.10 ln(c_0) below.
  const double at_knee = loading_limit(1.0, 4e-5, 2e-5, 0.1);
  CHECK(at_knee == doctest::Approx(0.025 * 2.0 * std::pow(1.0, 0.15)).epsilon(1e-12));
  const double below = loading_limit(1.0, 4e-5, 2e-5, 0.01);
  CHECK(below ==
        doctest::Approx(0.025 * 2.0 * std::pow(0.1, 0.35051701859881)).epsilon(1e-10));
  // Linear in the correction factor.
  CHECK(loading_limit(6.5, 4e-5, 2e-5, 0.1) == doctest::Approx(6.5 * at_knee).epsilon(1e-12));
  CHECK(loading_limit(1.0, 4e-5, 2e-5, 0.0) == 0.0);
}

TEST_CASE("saltation efficiency") {
  CHECK(saltation_efficiency(0.5, 0.6) == 0.0);  // below the loading limit
  CHECK(saltation_efficiency(0.5, 0.5) == 0.0);
  CHECK(saltation_efficiency(1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(saltation_efficiency(0.0, 0.5) == 0.0);
  const double eta = saltation_efficiency(2.0, 0.5);
  CHECK(eta >= 0.0);
  CHECK(eta <= 1.0);
}

TEST_CASE("total efficiency") {
  CHECK(total_efficiency(0.0, 10.0) == 0.0);
  CHECK(total_efficiency(7.5, 10.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(total_efficiency(1.0, 0.0), std::domain_error);
}

TEST_CASE("material fluxes vanish with the state and scale linearly in it") {
  const CycloneGeometry geo = cy1_dims();
  const DerivedGeometry dg = derive(geo);
  FlowParameters flow;
  flow.f_N = 1.0 / 22.0;
  flow.f_c = 6.5;
  flow.f_D_scale = 410.0;

  InletState inlet;
  inlet.v_in = 173.1 / 11.0;
  inlet.T_in = 594.8;
  inlet.C_s_in[kCaCO3] = 3.5;
  inlet.C_g_in[kN2] = 12.0;
  inlet.C_g_in[kCO2] = 4.0;

  SpeciesVec C_s = zero_vec(), C_g = zero_vec();
  C_s[kCaCO3] = 2.0;
  C_g[kN2] = 11.0;

  const MaterialFluxes f0 =
      material_fluxes(db(), inlet, zero_vec(), zero_vec(), 95290.0, 94520.0, 0.6, 2e-5,
                      0.6, 2710.0, geo, dg, flow);
  CHECK(f0.N_s_x == zero_vec());
  CHECK(f0.N_g_x == zero_vec());
  CHECK(f0.N_s_sep == zero_vec());

  const MaterialFluxes f1 = material_fluxes(db(), inlet, C_s, C_g, 95290.0, 94520.0, 0.6,
                                            2e-5, 0.6, 2710.0, geo, dg, flow);
  SpeciesVec C_s2 = C_s, C_g2 = C_g;
  for (auto& v : C_s2) v *= 3.0;
  for (auto& v : C_g2) v *= 3.0;
  const MaterialFluxes f3 = material_fluxes(db(), inlet, C_s2, C_g2, 95290.0, 94520.0,
                                            0.6, 2e-5, 0.6, 2710.0, geo, dg, flow);
  CHECK(f3.N_s_x[kCaCO3] == doctest::Approx(3.0 * f1.N_s_x[kCaCO3]).epsilon(1e-12));
  CHECK(f3.N_g_x[kN2] == doctest::Approx(3.0 * f1.N_g_x[kN2]).epsilon(1e-12));
  CHECK(f3.N_s_sep[kCaCO3] == doctest::Approx(3.0 * f1.N_s_sep[kCaCO3]).epsilon(1e-12));

  // The solid outlet rides the gas outlet at the f_N fraction.
  CHECK(f1.v_s_x == doctest::Approx(f1.v_g_x / 22.0).epsilon(1e-14));
  // The suspended inflow carries the saltation haircut.
  CHECK(f1.N_s_in[kCaCO3] ==
        doctest::Approx((1.0 - f1.eta_sal) * inlet.v_in * 3.5).epsilon(1e-12));
  CHECK(f1.eta_sal >= 0.0);
  CHECK(f1.eta_sal <= 1.0);
  CHECK(f1.c_0 > 0.0);
}

TEST_CASE("no inflow means no swirl and no saltation") {
  const CycloneGeometry geo = cy1_dims();
  const DerivedGeometry dg = derive(geo);
  FlowParameters flow;

  InletState still;
  still.T_in = 600.0;
  SpeciesVec C_s = zero_vec(), C_g = zero_vec();
  C_s[kCaCO3] = 2.0;
  C_g[kN2] = 11.0;
  const MaterialFluxes f = material_fluxes(db(), still, C_s, C_g, 94520.0, 94520.0, 0.6,
                                           2e-5, 0.6, 2710.0, geo, dg, flow);
  CHECK(f.v_theta_req == 0.0);
  CHECK(f.v_s_sep == 0.0);
  CHECK(f.eta_sal == 0.0);
  CHECK(f.v_g_x == 0.0);  // balanced pressures
  CHECK(f.N_s_in == zero_vec());
}
