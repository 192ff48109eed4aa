#pragma once

#include <array>
#include <vector>

#include "cyclone/dae.hpp"

namespace cyclone {

struct CalibrationTarget {
  double efficiency = 0.0;     // fraction in (0, 1)
  double solid_density = 0.0;  // kg/m^3
  double pressure = 0.0;       // Pa, mean of P_in and P_out
  std::array<double, kNumReactions> tuning{1.0, 1.0, 1.0, 1.0, 1.0};

  void validate() const;
};

struct CalibrationTrace {
  int evaluations = 0;
  std::vector<double> residuals;  // scaled infinity norms per outer iteration
};

struct SeparationFit {
  double f_N = 0.0;
  double f_c = 0.0;
  double eta = 0.0;
  double rho_s = 0.0;
  CalibrationTrace trace;
};

// Fits (f_N, f_c) so the steady state hits (efficiency, solid density).
// Damped 2-D Newton with a finite-difference Jacobian; every evaluation is a
// warm-started steady_state() solve. Relative tolerance 1e-3 on both
// residuals, at most 100 outer iterations.
SeparationFit calibrate_separation(CycloneModel& model, const CalibrationTarget& target);

struct PressureFit {
  double f_D_scale = 0.0;
  double P = 0.0;  // achieved steady pressure, Pa
  CalibrationTrace trace;
};

// Fits the Darcy friction scaling so the steady pressure hits the target.
// Bracketed secant, tolerance 1e-4 bar.
PressureFit calibrate_pressure(CycloneModel& model, double target_P);

struct CalibrationError : std::runtime_error {
  CalibrationError(const std::string& what, CalibrationTrace trace)
      : std::runtime_error(what), trace(std::move(trace)) {}
  CalibrationTrace trace;
};

}  // namespace cyclone
