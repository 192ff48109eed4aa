#include "cyclone/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <utility>

namespace cyclone {

void CalibrationTarget::validate() const {
  if (!(efficiency > 0.0 && efficiency < 1.0))
    throw std::invalid_argument("calibration target: efficiency must be in (0, 1)");
  if (!(solid_density > 0.0) || !(pressure > 0.0))
    throw std::invalid_argument("calibration target: targets must be positive");
  for (double f : tuning)
    if (!(f > 0.0)) throw std::invalid_argument("calibration target: tuning must be positive");
}

namespace {

// Warm-started steady-state evaluator shared by both fits.
struct SteadyEvaluator {
  CycloneModel& model;
  DifferentialState x;
  AlgebraicState y;
  bool primed = false;
  int evaluations = 0;

  Report solve() {
    if (!primed) {
      std::tie(x, y) = model.initial_state();
      primed = true;
    }
    std::tie(x, y) = model.steady_state(x, y);
    ++evaluations;
    return model.report(x, y);
  }
};

}  // namespace

SeparationFit calibrate_separation(CycloneModel& model, const CalibrationTarget& target) {
  target.validate();
  SteadyEvaluator eval{model};
  CalibrationTrace trace;

  // Work in log space to keep both factors positive.
  double z0 = std::log(model.flow().f_N);
  double z1 = std::log(model.flow().f_c);

  auto residual = [&](double a, double b, Report* rep) {
    model.flow().f_N = std::exp(a);
    model.flow().f_c = std::exp(b);
    const Report r = eval.solve();
    if (rep) *rep = r;
    return std::array<double, 2>{(r.eta - target.efficiency) / target.efficiency,
                                 (r.rho_s - target.solid_density) / target.solid_density};
  };

  Report rep;
  std::array<double, 2> F = residual(z0, z1, &rep);
  double norm = std::max(std::abs(F[0]), std::abs(F[1]));
  constexpr double tol = 1e-3;
  for (int it = 0; it < 100; ++it) {
    trace.residuals.push_back(norm);
    if (norm < tol) {
      trace.evaluations = eval.evaluations;
      SeparationFit fit;
      fit.f_N = std::exp(z0);
      fit.f_c = std::exp(z1);
      fit.eta = rep.eta;
      fit.rho_s = rep.rho_s;
      fit.trace = std::move(trace);
      return fit;
    }
    const double h = 1e-4;
    const std::array<double, 2> Fa = residual(z0 + h, z1, nullptr);
    const std::array<double, 2> Fb = residual(z0, z1 + h, nullptr);
    const double j00 = (Fa[0] - F[0]) / h, j01 = (Fb[0] - F[0]) / h;
    const double j10 = (Fa[1] - F[1]) / h, j11 = (Fb[1] - F[1]) / h;
    const double det = j00 * j11 - j01 * j10;
    if (!std::isfinite(det) || std::abs(det) < 1e-14) break;
    const double dz0 = -(j11 * F[0] - j01 * F[1]) / det;
    const double dz1 = -(-j10 * F[0] + j00 * F[1]) / det;

    double lambda = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 8; ++ls) {
      // Cap the log step so a wild Jacobian cannot jump orders of magnitude.
      const double s0 = std::clamp(lambda * dz0, -1.0, 1.0);
      const double s1 = std::clamp(lambda * dz1, -1.0, 1.0);
      try {
        Report rt;
        const std::array<double, 2> Ft = residual(z0 + s0, z1 + s1, &rt);
        const double nt = std::max(std::abs(Ft[0]), std::abs(Ft[1]));
        if (nt < norm || nt < tol) {
          z0 += s0;
          z1 += s1;
          F = Ft;
          rep = rt;
          norm = nt;
          accepted = true;
          break;
        }
      } catch (const SolverError&) {
        eval.primed = false;  // warm start poisoned; restart from scratch
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  trace.evaluations = eval.evaluations;
  model.flow().f_N = std::exp(z0);
  model.flow().f_c = std::exp(z1);
  throw CalibrationError("calibrate_separation: no convergence, residual " +
                             std::to_string(norm),
                         std::move(trace));
}

PressureFit calibrate_pressure(CycloneModel& model, double target_P) {
  if (!(target_P > 0.0))
    throw std::invalid_argument("calibrate_pressure: target must be positive");
  SteadyEvaluator eval{model};
  CalibrationTrace trace;
  constexpr double tol = 10.0;  // 1e-4 bar

  auto pressure_at = [&](double scale) {
    model.flow().f_D_scale = scale;
    eval.solve();
    return eval.y.P;
  };

  // Bracket the target: steady P grows with the friction scaling.
  double s_lo = model.flow().f_D_scale, s_hi = s_lo;
  double P_lo = pressure_at(s_lo), P_hi = P_lo;
  trace.residuals.push_back(std::abs(P_lo - target_P));
  for (int k = 0; k < 60 && ((P_lo > target_P) == (P_hi > target_P)); ++k) {
    if (P_lo > target_P) {
      s_lo /= 2.0;
      P_lo = pressure_at(s_lo);
      trace.residuals.push_back(std::abs(P_lo - target_P));
    } else {
      s_hi *= 2.0;
      P_hi = pressure_at(s_hi);
      trace.residuals.push_back(std::abs(P_hi - target_P));
    }
  }
  if ((P_lo > target_P) == (P_hi > target_P)) {
    trace.evaluations = eval.evaluations;
    throw CalibrationError("calibrate_pressure: failed to bracket the target",
                           std::move(trace));
  }

  double s = s_lo, P = P_lo;
  for (int it = 0; it < 100; ++it) {
    if (std::abs(P_lo - target_P) < tol) {
      s = s_lo;
      P = P_lo;
      break;
    }
    if (std::abs(P_hi - target_P) < tol) {
      s = s_hi;
      P = P_hi;
      break;
    }
    // Secant inside the bracket, bisection when it strays.
    s = s_lo + (target_P - P_lo) * (s_hi - s_lo) / (P_hi - P_lo);
    if (!(s > s_lo && s < s_hi)) s = 0.5 * (s_lo + s_hi);
    P = pressure_at(s);
    trace.residuals.push_back(std::abs(P - target_P));
    if (std::abs(P - target_P) < tol) break;
    if ((P > target_P) == (P_hi > target_P)) {
      s_hi = s;
      P_hi = P;
    } else {
      s_lo = s;
      P_lo = P;
    }
  }
  trace.evaluations = eval.evaluations;
  if (std::abs(P - target_P) >= tol)
    throw CalibrationError("calibrate_pressure: no convergence", std::move(trace));
  model.flow().f_D_scale = s;
  PressureFit fit;
  fit.f_D_scale = s;
  fit.P = P;
  fit.trace = std::move(trace);
  return fit;
}

}  // namespace cyclone
