// Fits the approximated inflow compositions of the bundled presets: solid
// loading, d_m, and d_med against the reference (eta, rho_s, eta_sal).
// Prints values to merge into the presets.
#include <cmath>
#include <cstdio>
#include <tuple>

#include "cyclone/scenario.hpp"

using namespace cyclone;

namespace {

struct Targets {
  double eta, rho_s, eta_sal, T_m;
};

struct Knobs {
  double load_scale = 1.0;
  double d_m = 25e-6;
  double d_med = 16e-6;
  double film = 8.0;  // external wall-environment film, W/(m^2 K)
};

struct Evaluator {
  const SpeciesDb& db;
  ScenarioConfig base;
  SpeciesVec C_s0;
  DifferentialState x;
  AlgebraicState y;
  bool primed = false;

  std::tuple<double, double, double, double> solve(const Knobs& k) {
    ScenarioConfig cfg = base;
    for (int sp = 0; sp < kNumSolids; ++sp) cfg.C_s_in[sp] = k.load_scale * C_s0[sp];
    cfg.flow.d_m = k.d_m;
    cfg.flow.d_med = k.d_med;
    cfg.heat.external_film = k.film;
    CycloneModel model = make_model(db, cfg);
    if (!primed) {
      std::tie(x, y) = model.initial_state();
      primed = true;
    }
    try {
      std::tie(x, y) = model.steady_state(x, y);
    } catch (const SolverError&) {
      std::tie(x, y) = model.initial_state();
      std::tie(x, y) = model.steady_state(x, y);
    }
    const Report r = model.report(x, y);
    return {r.eta, r.rho_s, r.eta_sal, y.T_m};
  }
};

void fit_preset(const SpeciesDb& db, const std::string& name, const Targets& tgt) {
  Evaluator ev{db, load_preset(name)};
  ev.C_s0 = ev.base.C_s_in;
  Knobs k;
  k.d_m = ev.base.flow.d_m;
  k.d_med = ev.base.flow.d_med;
  if (ev.base.heat.external_film > 0.0) k.film = ev.base.heat.external_film;

  auto sep_res = [&](const Knobs& kk) {
    auto [eta, rho, sal, Tm] = ev.solve(kk);
    (void)Tm;
    return std::array<double, 3>{(eta - tgt.eta) / tgt.eta, (rho - tgt.rho_s) / tgt.rho_s,
                                 sal - tgt.eta_sal};
  };

  // 3-D Newton in log knobs for (eta, rho_s, eta_sal).
  double z[3] = {std::log(k.load_scale), std::log(k.d_m), std::log(k.d_med)};
  for (int it = 0; it < 60; ++it) {
    Knobs kk = k;
    kk.load_scale = std::exp(z[0]);
    kk.d_m = std::exp(z[1]);
    kk.d_med = std::exp(z[2]);
    auto F = sep_res(kk);
    double norm = std::max({std::abs(F[0]), std::abs(F[1]), std::abs(F[2])});
    std::printf("  [%s it %d] res = %.2e %.2e %.2e\n", name.c_str(), it, F[0], F[1], F[2]);
    if (norm < 5e-4) {
      k = kk;
      break;
    }
    double J[3][3];
    const double h = 1e-4;
    for (int j = 0; j < 3; ++j) {
      double zp[3] = {z[0], z[1], z[2]};
      zp[j] += h;
      Knobs kp = k;
      kp.load_scale = std::exp(zp[0]);
      kp.d_m = std::exp(zp[1]);
      kp.d_med = std::exp(zp[2]);
      auto Fp = sep_res(kp);
      for (int i = 0; i < 3; ++i) J[i][j] = (Fp[i] - F[i]) / h;
    }
    // Solve 3x3 by Cramer.
    auto det3 = [](double a[3][3]) {
      return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
             a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const double D = det3(J);
    if (std::abs(D) < 1e-14) {
      std::printf("  [%s] singular Jacobian\n", name.c_str());
      break;
    }
    double dz[3];
    for (int j = 0; j < 3; ++j) {
      double A[3][3];
      for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 3; ++c) A[i][c] = c == j ? -F[i] : J[i][c];
      dz[j] = det3(A) / D;
    }
    for (int j = 0; j < 3; ++j) z[j] += std::clamp(dz[j], -0.7, 0.7);
    k = kk;
  }
  k.load_scale = std::exp(z[0]);
  k.d_m = std::exp(z[1]);
  k.d_med = std::exp(z[2]);

  auto [eta, rho, sal, Tm] = ev.solve(k);
  std::printf("%s: load_scale=%.6f d_m=%.4f um d_med=%.4f um film=%.5f\n", name.c_str(),
              k.load_scale, k.d_m * 1e6, k.d_med * 1e6, k.film);
  std::printf("%s: achieved eta=%.4f rho_s=%.4f eta_sal=%.4f T_m=%.2f degC (P=%.4f bar)\n",
              name.c_str(), eta, rho, sal, Tm - 273.15, ev.y.P / 1e5);
}

}  // namespace

int main(int argc, char** argv) {
  const SpeciesDb db = SpeciesDb::load_default();
  const Targets targets[5] = {
      {0.9496, 0.499, 0.60, 318.74 + 273.15},
      {0.8901, 0.378, 0.56, 522.32 + 273.15},
      {0.8694, 0.354, 0.51, 673.98 + 273.15},
      {0.8506, 0.380, 0.54, 809.89 + 273.15},
      {0.7500, 0.277, 0.37, 900.65 + 273.15},
  };
  const char* names[5] = {"cy1", "cy2", "cy3", "cy4", "cy5"};
  for (int i = 0; i < 5; ++i) {
    if (argc > 1 && std::string(argv[1]) != names[i]) continue;
    fit_preset(db, names[i], targets[i]);
  }
  return 0;
}
