#include <doctest.h>

#include <array>
#include <cmath>
#include <tuple>
#include <vector>

#include "cyclone/scenario.hpp"

using namespace cyclone;

namespace {

const SpeciesDb& db() {
  static SpeciesDb instance = SpeciesDb::load_default();
  return instance;
}

const ScenarioConfig& cy1() {
  static ScenarioConfig cfg = load_preset("cy1");
  return cfg;
}

const std::pair<DifferentialState, AlgebraicState>& steady_cy1() {
  static auto solved = [] {
    CycloneModel model = make_model(db(), cy1());
    auto [x0, y0] = model.initial_state();
    return model.steady_state(x0, y0);
  }();
  return solved;
}

// Preset with both ports closed and no leaks: zero inflow, no false air, an
// effectively plugged outlet pipe, and a near-perfectly insulated outer
// surface (vanishing film conductance and emissivities), so nothing crosses
// the system boundary.
ScenarioConfig plugged_config(double T_w0) {
  ScenarioConfig cfg = cy1();
  cfg.V_in = 0.0;
  cfg.false_air = 0.0;
  cfg.flow.f_D_scale = 1e60;
  cfg.heat.eps_w = 1e-9;
  cfg.heat.eps_e = 1e-9;
  cfg.heat.external_film = 1e-12;
  cfg.T_e = T_w0;
  return cfg;
}

// Scaled infinity norm over the differential state.
double state_distance(const DifferentialState& a, const DifferentialState& b) {
  double d = 0.0;
  for (int sp = 0; sp < kNumSpecies; ++sp) {
    d = std::max(d, std::abs(a.C_s[sp] - b.C_s[sp]));
    d = std::max(d, std::abs(a.C_g[sp] - b.C_g[sp]));
  }
  d = std::max(d, std::abs(a.U_m - b.U_m) / 1e6);
  d = std::max(d, std::abs(a.U_r - b.U_r) / 1e6);
  d = std::max(d, std::abs(a.U_w - b.U_w) / 1e6);
  return d;
}

double total_energy(const CycloneModel& m, const DifferentialState& x) {
  const DerivedGeometry& dg = m.derived();
  return x.U_m * dg.V_tot + x.U_r * dg.V_r + x.U_w * dg.V_w;
}

}  // namespace

TEST_CASE("initial state is consistent") {
  CycloneModel model = make_model(db(), cy1());
  auto [x0, y0] = model.initial_state();
  for (int sp = 0; sp < kNumSolids; ++sp) CHECK(x0.C_s[sp] == doctest::Approx(1.0));
  const auto g = model.algebraic_residual(x0, y0);
  CHECK(std::abs(g[0]) < 1e-8);  // volume closure
  CHECK(y0.T_m == doctest::Approx(model.boundary().T_in).epsilon(1e-9));
  CHECK(y0.T_r == doctest::Approx(model.boundary().T_e).epsilon(1e-9));
  CHECK(y0.P > 0.0);
}

TEST_CASE("algebraic solve round-trips consistent states") {
  CycloneModel model = make_model(db(), cy1());
  auto [x0, y0] = model.initial_state();
  SpeciesVec C_s = x0.C_s, C_g = x0.C_g;
  const DifferentialState x =
      model.energies_from_temperatures(C_s, C_g, 650.0, 500.0, 380.0, y0.P);
  AlgebraicState guess{600.0, 550.0, 350.0, y0.P * 1.05};
  const AlgebraicState y = model.solve_algebraic(x, guess);
  CHECK(y.T_m == doctest::Approx(650.0).epsilon(1e-8));
  CHECK(y.T_r == doctest::Approx(500.0).epsilon(1e-8));
  CHECK(y.T_w == doctest::Approx(380.0).epsilon(1e-8));
  const auto g = model.algebraic_residual(x, y);
  CHECK(std::abs(g[0]) < 1e-8);
}

TEST_CASE("pure-gas pressure matches the ideal-gas closed form") {
  CycloneModel model = make_model(db(), cy1());
  auto [x0, y0] = model.initial_state();
  const DifferentialState x =
      model.energies_from_temperatures(zero_vec(), x0.C_g, 600.0, 500.0, 400.0, y0.P);
  const AlgebraicState y = model.solve_algebraic(x, y0);
  // Volume closure with no solids: sum C_g R T = P.
  double n_tot = 0.0;
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp) n_tot += x.C_g[sp];
  CHECK(y.P == doctest::Approx(n_tot * constants::R_gas * y.T_m).epsilon(1e-8));
}

TEST_CASE("volume closure responds monotonically to pressure") {
  CycloneModel model = make_model(db(), cy1());
  auto [x0, y0] = model.initial_state();
  const auto g0 = model.algebraic_residual(x0, y0);
  AlgebraicState up = y0;
  up.P *= 1.01;  // compressing the gas shrinks its volume fraction
  const auto g1 = model.algebraic_residual(x0, up);
  CHECK(g1[0] < g0[0]);
}

TEST_CASE("steady state solves the full system and is a step fixed point") {
  CycloneModel model = make_model(db(), cy1());
  const auto& [x, y] = steady_cy1();
  const DifferentialState rhs = model.ode_rhs(x, y);
  const DifferentialState zero{};
  CHECK(state_distance(rhs, zero) < 1e-7);
  const auto g = model.algebraic_residual(x, y);
  CHECK(std::abs(g[0]) < 1e-8);

  // A long implicit step from the steady state stays there.
  auto [x2, y2] = model.step(x, y, 30.0);
  CHECK(state_distance(x, x2) < 1e-6);

  // Restarting the solver from its own answer returns it unchanged.
  auto [x3, y3] = model.steady_state(x, y);
  CHECK(state_distance(x, x3) < 1e-9);

  // Index-1 probe: the algebraic Jacobian is comfortably nonsingular.
  CHECK(model.algebraic_jacobian_rcond(x, y) > 1e-12);
}

TEST_CASE("closed ports reduce the mass balance to reaction stoichiometry") {
  const ScenarioConfig cfg = plugged_config(500.0);
  CycloneModel model = make_model(db(), cfg);
  auto [x0, y0] = model.initial_state();
  const DifferentialState x =
      model.energies_from_temperatures(x0.C_s, x0.C_g, 1100.0, 600.0, 500.0, y0.P);
  const AlgebraicState y = model.solve_algebraic(x, y0);
  const DifferentialState rhs = model.ode_rhs(x, y);

  double scale = 0.0;
  for (int sp = 0; sp < kNumSpecies; ++sp)
    scale += std::abs(rhs.C_s[sp]) + std::abs(rhs.C_g[sp]);
  REQUIRE(scale > 0.0);  // calcination is active at 1100 K
  for (int e = 0; e < kNumElements; ++e) {
    double balance = 0.0;
    for (int sp = 0; sp < kNumSpecies; ++sp)
      balance += (rhs.C_s[sp] + rhs.C_g[sp]) * db().record(sp).atoms[e];
    CHECK(std::abs(balance) <= 1e-10 * scale);
  }
}

TEST_CASE("element totals are conserved across steps with closed ports") {
  const ScenarioConfig cfg = plugged_config(500.0);
  CycloneModel model = make_model(db(), cfg);
  auto [x0, y0] = model.initial_state();
  DifferentialState x =
      model.energies_from_temperatures(x0.C_s, x0.C_g, 1100.0, 600.0, 500.0, y0.P);
  AlgebraicState y = model.solve_algebraic(x, y0);

  std::array<double, kNumElements> before{};
  for (int e = 0; e < kNumElements; ++e)
    for (int sp = 0; sp < kNumSpecies; ++sp)
      before[e] += (x.C_s[sp] + x.C_g[sp]) * db().record(sp).atoms[e];

  for (int i = 0; i < 5; ++i) std::tie(x, y) = model.step(x, y, 1.0);

  for (int e = 0; e < kNumElements; ++e) {
    double after = 0.0;
    for (int sp = 0; sp < kNumSpecies; ++sp)
      after += (x.C_s[sp] + x.C_g[sp]) * db().record(sp).atoms[e];
    if (before[e] == 0.0) {
      CHECK(std::abs(after) < 1e-10);
    } else {
      CHECK(after == doctest::Approx(before[e]).epsilon(1e-10));
    }
  }
}

TEST_CASE("closed adiabatic system conserves total energy per step") {
  const double T_w0 = 450.0;
  const ScenarioConfig cfg = plugged_config(T_w0);
  CycloneModel model = make_model(db(), cfg);
  auto [x0, y0] = model.initial_state();
  DifferentialState x =
      model.energies_from_temperatures(x0.C_s, x0.C_g, 900.0, 600.0, T_w0, y0.P);
  AlgebraicState y = model.solve_algebraic(x, y0);

  for (int i = 0; i < 10; ++i) {
    const double e0 = total_energy(model, x);
    std::tie(x, y) = model.step(x, y, 0.1);
    const double e1 = total_energy(model, x);
    CHECK(std::abs(e1 - e0) <= 1e-8 * std::abs(e0));
  }
}

TEST_CASE("implicit Euler converges at first order") {
  CycloneModel model = make_model(db(), cy1());
  auto [x0, y0] = model.initial_state();
  // Start on a smooth stretch of the transient.
  const TimeSeries warmup = model.simulate(x0, y0, 2.0);
  const DifferentialState xs = warmup.back().x;
  const AlgebraicState ys = warmup.back().y;

  auto integrate = [&](double dt, int n) {
    DifferentialState x = xs;
    AlgebraicState y = ys;
    for (int i = 0; i < n; ++i) std::tie(x, y) = model.step(x, y, dt);
    return x;
  };
  const DifferentialState a = integrate(0.4, 10);
  const DifferentialState b = integrate(0.2, 20);
  const DifferentialState c = integrate(0.1, 40);
  const double e1 = state_distance(a, b);
  const double e2 = state_distance(b, c);
  const double order = std::log2(e1 / e2);
  CHECK(order > 0.9);
  CHECK(order < 1.1);
}

TEST_CASE("simulate: sample grid and per-step closures") {
  CycloneModel model = make_model(db(), cy1());
  auto [x0, y0] = model.initial_state();

  const TimeSeries none = model.simulate(x0, y0, 0.0);
  CHECK(none.size() == 1);
  CHECK(none.front().t == 0.0);

  const TimeSeries series = model.simulate(x0, y0, 20.0);
  CHECK(series.size() > 2);
  for (size_t i = 1; i < series.size(); ++i) CHECK(series[i].t > series[i - 1].t);
  CHECK(series.back().t == doctest::Approx(20.0));
  for (const Sample& s : series) {
    const auto g = model.algebraic_residual(s.x, s.y);
    CHECK(std::abs(g[0]) < 1e-8);
    for (int sp = 0; sp < kNumSpecies; ++sp) {
      CHECK(s.x.C_s[sp] >= 0.0);
      CHECK(s.x.C_g[sp] >= 0.0);
    }
  }
}

TEST_CASE("steady mass closure: inflow equals outflow plus separation") {
  CycloneModel model = make_model(db(), cy1());
  const auto& [x, y] = steady_cy1();
  const Report r = model.report(x, y);
  const double in = r.mdot_s_in + r.mdot_g_in;
  const double out = r.mdot_s_out + r.mdot_s_sep + r.mdot_g_out;
  CHECK(out == doctest::Approx(in).epsilon(1e-8));
  CHECK(r.eta >= 0.0);
  CHECK(r.eta <= 1.0);
  CHECK(r.eta_sal <= r.eta + 1e-12);
}

TEST_CASE("finite-difference Jacobians agree with central differences") {
  CycloneModel model = make_model(db(), cy1());
  const auto& [xs, ys] = steady_cy1();

  // Pack the combined residual F = [ode rhs; algebraic residual].
  constexpr int n = kNumDiff + kNumAlg;
  auto pack_eval = [&](const std::vector<double>& v) {
    DifferentialState x;
    for (int sp = 0; sp < kNumSolids; ++sp) x.C_s[sp] = v[sp];
    for (int sp = kNumSolids; sp < kNumSpecies; ++sp) x.C_g[sp] = v[sp];
    x.U_m = v[kNumSpecies];
    x.U_r = v[kNumSpecies + 1];
    x.U_w = v[kNumSpecies + 2];
    AlgebraicState y{v[kNumDiff], v[kNumDiff + 1], v[kNumDiff + 2], v[kNumDiff + 3]};
    const DifferentialState f = model.ode_rhs(x, y);
    const auto g = model.algebraic_residual(x, y);
    std::vector<double> out(n);
    for (int sp = 0; sp < kNumSolids; ++sp) out[sp] = f.C_s[sp];
    for (int sp = kNumSolids; sp < kNumSpecies; ++sp) out[sp] = f.C_g[sp];
    out[kNumSpecies] = f.U_m;
    out[kNumSpecies + 1] = f.U_r;
    out[kNumSpecies + 2] = f.U_w;
    for (int i = 0; i < kNumAlg; ++i) out[kNumDiff + i] = g[i];
    return out;
  };

  std::vector<double> v(n);
  for (int sp = 0; sp < kNumSolids; ++sp) v[sp] = xs.C_s[sp];
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp) v[sp] = xs.C_g[sp];
  v[kNumSpecies] = xs.U_m;
  v[kNumSpecies + 1] = xs.U_r;
  v[kNumSpecies + 2] = xs.U_w;
  v[kNumDiff] = ys.T_m;
  v[kNumDiff + 1] = ys.T_r;
  v[kNumDiff + 2] = ys.T_w;
  v[kNumDiff + 3] = ys.P;

  std::vector<double> scale(n, 1.0);
  for (int i = kNumSpecies; i < kNumDiff; ++i) scale[i] = 1e6;
  scale[kNumDiff] = scale[kNumDiff + 1] = scale[kNumDiff + 2] = 100.0;
  scale[kNumDiff + 3] = 1e4;

  double num = 0.0, den = 0.0;
  for (int j = 0; j < n; ++j) {
    // Species at (or numerically at) zero sit on the clamping kink of the
    // model and are handled by one-sided differences in the solver; the
    // smoothness check applies to interior coordinates only.
    if (j < kNumSpecies && v[j] < 1e-8) continue;
    const double h = 1e-6 * std::max(std::abs(v[j]), scale[j]);
    std::vector<double> vp = v, vm = v, vf = v;
    vp[j] += h;
    vm[j] -= h;
    vf[j] += h;
    const auto Fp = pack_eval(vp);
    const auto Fm = pack_eval(vm);
    const auto F0 = pack_eval(v);
    for (int i = 0; i < n; ++i) {
      const double fwd = (Fp[i] - F0[i]) / h;
      const double ctr = (Fp[i] - Fm[i]) / (2.0 * h);
      num += (fwd - ctr) * (fwd - ctr);
      den += ctr * ctr;
    }
  }
  CHECK(std::sqrt(num) <= 1e-5 * std::sqrt(den));
}

TEST_CASE("settling time measurement") {
  // A constant signal is settled immediately.
  TimeSeries flat(50);
  for (size_t i = 0; i < flat.size(); ++i) {
    flat[i].t = static_cast<double>(i);
    flat[i].y.T_m = 7.0;
  }
  CHECK(settling_time(flat, [](const Sample& s) { return s.y.T_m; }) == 0.0);

  // Exponential approach 1 + exp(-t/tau) with a 1% band settles near
  // tau ln(100).
  const double tau = 3.0;
  TimeSeries decay;
  for (double t = 0.0; t <= 8.0 * tau; t += tau / 50.0) {
    Sample s;
    s.t = t;
    s.y.T_m = 1.0 + std::exp(-t / tau);
    decay.push_back(s);
  }
  const double settle = settling_time(decay, [](const Sample& s) { return s.y.T_m; }, 0.01);
  CHECK(settle == doctest::Approx(tau * std::log(100.0)).epsilon(0.02));
}
