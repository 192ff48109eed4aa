#include "cyclone/dae.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <utility>

#include <Eigen/Dense>

namespace cyclone {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr int kNV = kNumDiff + kNumAlg;  // 24
constexpr double kConcScale = 1.0;       // mol/m^3
constexpr double kEnergyScale = 1e6;     // J/m^3
constexpr double kTempScale = 100.0;     // K
constexpr double kPressScale = 1e4;      // Pa

Vec variable_scales() {
  Vec s(kNV);
  for (int i = 0; i < kNumDiff - 3; ++i) s[i] = kConcScale;
  s[kNumDiff - 3] = kEnergyScale;
  s[kNumDiff - 2] = kEnergyScale;
  s[kNumDiff - 1] = kEnergyScale;
  s[kNumDiff + 0] = kTempScale;
  s[kNumDiff + 1] = kTempScale;
  s[kNumDiff + 2] = kTempScale;
  s[kNumDiff + 3] = kPressScale;
  return s;
}

Vec pack(const DifferentialState& x, const AlgebraicState& y) {
  Vec v(kNV);
  for (int i = 0; i < kNumSolids; ++i) v[i] = x.C_s[i];
  for (int i = 0; i < kNumGases; ++i) v[kNumSolids + i] = x.C_g[kNumSolids + i];
  v[kNumDiff - 3] = x.U_m;
  v[kNumDiff - 2] = x.U_r;
  v[kNumDiff - 1] = x.U_w;
  v[kNumDiff + 0] = y.T_m;
  v[kNumDiff + 1] = y.T_r;
  v[kNumDiff + 2] = y.T_w;
  v[kNumDiff + 3] = y.P;
  return v;
}

void unpack(const Vec& v, DifferentialState& x, AlgebraicState& y) {
  x.C_s = zero_vec();
  x.C_g = zero_vec();
  for (int i = 0; i < kNumSolids; ++i) x.C_s[i] = v[i];
  for (int i = 0; i < kNumGases; ++i) x.C_g[kNumSolids + i] = v[kNumSolids + i];
  x.U_m = v[kNumDiff - 3];
  x.U_r = v[kNumDiff - 2];
  x.U_w = v[kNumDiff - 1];
  y.T_m = v[kNumDiff + 0];
  y.T_r = v[kNumDiff + 1];
  y.T_w = v[kNumDiff + 2];
  y.P = v[kNumDiff + 3];
}

// Residual evaluator; returns false when the trial point is not evaluable
// (negative temperature, singular suspension, ...).
using ResidualFn = std::function<bool(const Vec&, Vec&)>;

struct NewtonOutcome {
  Vec v;
  bool converged = false;
  double residual_norm = 0.0;
  int iters = 0;
};

NewtonOutcome newton_solve(const ResidualFn& residual, Vec v0, const Vec& scale,
                           double tol, int max_iter) {
  NewtonOutcome out;
  out.v = std::move(v0);
  const int n = static_cast<int>(out.v.size());
  Vec F(n), Ft(n);
  if (!residual(out.v, F)) {
    out.residual_norm = std::numeric_limits<double>::infinity();
    return out;
  }
  double norm = F.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < max_iter; ++it) {
    out.iters = it;
    out.residual_norm = norm;
    if (norm < tol) {
      out.converged = true;
      return out;
    }
    Mat J(n, n);
    for (int j = 0; j < n; ++j) {
      const double h = 1e-7 * std::max(std::abs(out.v[j]), scale[j]);
      Vec vp = out.v;
      vp[j] += h;
      if (!residual(vp, Ft)) {
        vp[j] = out.v[j] - h;
        if (!residual(vp, Ft)) return out;
        J.col(j) = (F - Ft) / h;
      } else {
        J.col(j) = (Ft - F) / h;
      }
    }
    Eigen::PartialPivLU<Mat> lu(J);
    Vec dv = lu.solve(-F);
    if (!dv.allFinite()) return out;
    // Backtracking line search on the residual norm.
    double lambda = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 10; ++ls) {
      Vec vt = out.v + lambda * dv;
      if (residual(vt, Ft)) {
        const double nt = Ft.lpNorm<Eigen::Infinity>();
        if (nt < norm * (1.0 - 1e-4 * lambda) || nt < tol) {
          out.v = vt;
          F = Ft;
          norm = nt;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      out.residual_norm = norm;
      return out;
    }
  }
  out.residual_norm = norm;
  out.converged = norm < tol;
  return out;
}

}  // namespace

// Everything the balances need at one (x, y) point.
struct CycloneModel::RhsDetail {
  double Vhat_s = 0.0, Vhat_g = 0.0;
  double rho_s = 0.0, rho_g = 0.0, rho_m = 0.0;
  double mu_g = 0.0, mu_m = 0.0, k_g = 0.0, k_m = 0.0;
  double rho_s0 = 0.0;
  MaterialFluxes fluxes;
  SpeciesVec false_air_rate{};  // mol/s
  SpeciesVec R{};               // mol/(m^3 s)
  ConvectiveHeats q_cv;
  RadiativeHeats q_rad;
  DifferentialState dx;
};

CycloneModel::CycloneModel(const SpeciesDb& db, ReactionSet reactions, CycloneGeometry geo,
                           FlowParameters flow, HeatTransferParams ht,
                           WallMaterial refractory, WallMaterial wall,
                           BoundaryConditions bc, SolverSettings solver)
    : db_(&db),
      reactions_(std::move(reactions)),
      geo_(geo),
      dg_(derive(geo)),
      flow_(flow),
      ht_(ht),
      refractory_(refractory),
      wall_(wall),
      bc_(bc),
      solver_(solver) {
  flow_.validate();
  ht_.validate();
  if (!(bc_.T_in > 0) || !(bc_.P_out > 0) || !(bc_.T_e > 0) || bc_.v_in < 0)
    throw std::invalid_argument("boundary conditions: invalid values");
}

CycloneModel::RhsDetail CycloneModel::evaluate(const DifferentialState& x,
                                               const AlgebraicState& y) const {
  if (!(y.T_m > 0) || !(y.T_r > 0) || !(y.T_w > 0) || !(y.P > 0))
    throw std::domain_error("evaluate: nonpositive temperature or pressure");
  RhsDetail d;

  // Tiny transient negatives from Newton iterates are clamped for property
  // evaluation only; the balance terms keep the raw values.
  SpeciesVec Cs_cl = x.C_s, Cg_cl = x.C_g;
  for (double& c : Cs_cl) c = std::max(c, 0.0);
  for (double& c : Cg_cl) c = std::max(c, 0.0);

  const SpeciesDb& db = *db_;
  d.Vhat_s = db.volume(y.T_m, y.P, Cs_cl, Phase::Solid);
  d.Vhat_g = db.volume(y.T_m, y.P, Cg_cl, Phase::Gas);
  d.rho_s = db.phase_density(Cs_cl, Phase::Solid);
  d.rho_g = db.phase_density(Cg_cl, Phase::Gas);
  d.rho_m = d.rho_s + d.rho_g;
  d.mu_g = db.mixture_gas_viscosity(Cg_cl, y.T_m);
  d.mu_m = suspension_viscosity(d.mu_g, d.Vhat_s);
  d.k_g = db.mixture_gas_conductivity(Cg_cl, y.T_m);

  // Serial conductivity over normalized volume fractions.
  {
    std::vector<double> vf, ks;
    for (int sp = 0; sp < kNumSolids; ++sp) {
      if (Cs_cl[sp] <= 0.0) continue;
      vf.push_back(Cs_cl[sp] * db.molar_mass(sp) / db.record(sp).solid_density);
      ks.push_back(db.record(sp).solid_conductivity);
    }
    const double total = d.Vhat_g + d.Vhat_s;
    for (double& v : vf) v /= total;
    d.k_m = serial_conductivity(d.Vhat_g / total, d.k_g, vf, ks);
  }

  d.rho_s0 = d.Vhat_s > 0.0 ? d.rho_s / d.Vhat_s : 0.0;

  InletState inlet;
  inlet.v_in = bc_.v_in;
  inlet.T_in = bc_.T_in;
  inlet.C_s_in = bc_.C_s_in;
  inlet.C_g_in = bc_.C_g_in;
  d.fluxes = material_fluxes(db, inlet, x.C_s, x.C_g, y.P, bc_.P_out, d.rho_m, d.mu_m,
                             d.rho_g, d.rho_s0, geo_, dg_, flow_);

  // False air: ambient-composition leak, molar rate at ambient conditions.
  if (bc_.false_air > 0.0) {
    const double n_dot = constants::P_atm * bc_.false_air / (constants::R_gas * bc_.T_e);
    d.false_air_rate[kN2] = 0.79 * n_dot;
    d.false_air_rate[kO2] = 0.21 * n_dot;
  }

  d.R = reactions_.production_rates(reactions_.reaction_rates_clamped(y.T_m, [&] {
    SpeciesVec C = Cs_cl;
    for (int sp = kNumSolids; sp < kNumSpecies; ++sp) C[sp] = Cg_cl[sp];
    return C;
  }()));

  const double V = dg_.V_tot;
  for (int sp = 0; sp < kNumSolids; ++sp)
    d.dx.C_s[sp] = (geo_.A_in * d.fluxes.N_s_in[sp] - dg_.A_x * d.fluxes.N_s_x[sp] -
                    dg_.A_sep * d.fluxes.N_s_sep[sp]) /
                       V +
                   d.R[sp];
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp)
    d.dx.C_g[sp] = (geo_.A_in * d.fluxes.N_g_in[sp] - dg_.A_x * d.fluxes.N_g_x[sp] +
                    d.false_air_rate[sp]) /
                       V +
                   d.R[sp];

  // Enthalpy fluxes at the upstream temperature: inflows at T_in (false air
  // at T_e), outflows and the separated stream at T_m.
  const double dH_s = geo_.A_in * db.enthalpy(bc_.T_in, y.P, d.fluxes.N_s_in) -
                      dg_.A_x * db.enthalpy(y.T_m, y.P, d.fluxes.N_s_x) -
                      dg_.A_sep * db.enthalpy(y.T_m, y.P, d.fluxes.N_s_sep);
  double dH_g = geo_.A_in * db.enthalpy(bc_.T_in, y.P, d.fluxes.N_g_in) -
                dg_.A_x * db.enthalpy(y.T_m, y.P, d.fluxes.N_g_x);
  if (bc_.false_air > 0.0) dH_g += db.enthalpy(bc_.T_e, y.P, d.false_air_rate);

  // Mixture convection coefficient via the fluidized-suspension Nusselt.
  double cv_s = 0.0, cv_g = 0.0;
  for (int sp = 0; sp < kNumSolids; ++sp)
    if (Cs_cl[sp] > 0.0) cv_s += Cs_cl[sp] * db.heat_capacity(sp, y.T_m);
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp)
    if (Cg_cl[sp] > 0.0) cv_g += Cg_cl[sp] * db.heat_capacity(sp, y.T_m);
  const double c_ps = d.rho_s > 0.0 ? cv_s / d.rho_s : 0.0;
  const double c_pg = d.rho_g > 0.0 ? cv_g / d.rho_g : 1.0;
  double k_solid = 1.0;
  if (d.Vhat_s > 0.0) {
    double inv = 0.0;
    for (int sp = 0; sp < kNumSolids; ++sp) {
      if (Cs_cl[sp] <= 0.0) continue;
      const double frac = Cs_cl[sp] * db.molar_mass(sp) / db.record(sp).solid_density / d.Vhat_s;
      inv += frac / db.record(sp).solid_conductivity;
    }
    k_solid = 1.0 / inv;
  }
  const double Re = d.rho_g * bc_.v_in * dg_.d_c / d.mu_g;
  const double dP_c = bc_.P_in - bc_.P_out;
  const double Nu = nusselt(bc_.v_in, flow_.u_mf, dg_.d_c, flow_.d_p, Re, d.rho_s,
                            d.rho_g, c_ps, c_pg, k_solid, d.k_g, dP_c);
  const double beta_m = mixture_convection_coefficient(d.k_m, dg_.D_H, Nu);
  const OverallCoefficients cf =
      overall_convection_coefficients(geo_, dg_, beta_m, ht_.k_r, ht_.k_w, ht_.external_film);
  d.q_cv = convective_heats(y.T_m, y.T_r, y.T_w, bc_.T_e, cf);
  d.q_rad = radiative_heats(y.T_m, y.T_r, y.T_w, bc_.T_e, ht_, dg_.A_c * d.Vhat_s, dg_.A_w);

  d.dx.U_m = (dH_s + dH_g - d.q_cv.Q_cr - d.q_rad.Q_cr) / V;
  d.dx.U_r = (d.q_cv.Q_cr + d.q_rad.Q_cr - d.q_cv.Q_rw) / dg_.V_r;
  d.dx.U_w = (d.q_cv.Q_rw - d.q_cv.Q_we - d.q_rad.Q_we) / dg_.V_w;
  return d;
}

DifferentialState CycloneModel::ode_rhs(const DifferentialState& x,
                                        const AlgebraicState& y) const {
  return evaluate(x, y).dx;
}

std::array<double, kNumAlg> CycloneModel::algebraic_residual(
    const DifferentialState& x, const AlgebraicState& y) const {
  if (!(y.T_m > 0) || !(y.T_r > 0) || !(y.T_w > 0) || !(y.P > 0))
    throw std::domain_error("algebraic_residual: nonpositive temperature or pressure");
  SpeciesVec Cs_cl = x.C_s, Cg_cl = x.C_g;
  for (double& c : Cs_cl) c = std::max(c, 0.0);
  for (double& c : Cg_cl) c = std::max(c, 0.0);
  const SpeciesDb& db = *db_;
  std::array<double, kNumAlg> g{};
  g[0] = db.volume(y.T_m, y.P, Cg_cl, Phase::Gas) +
         db.volume(y.T_m, y.P, Cs_cl, Phase::Solid) - 1.0;
  g[1] = x.U_m - db.mixture_internal_energy(y.T_m, y.P, Cs_cl, Cg_cl);
  g[2] = x.U_r - refractory_.density * refractory_.cp_mass * (y.T_r - constants::T_ref);
  g[3] = x.U_w - wall_.density * wall_.cp_mass * (y.T_w - constants::T_ref);
  return g;
}

namespace {

// Scales turning the algebraic residuals into comparable (Kelvin-like) units.
struct AlgScales {
  double s1 = 1.0, s2 = 1.0, s3 = 1.0, s4 = 1.0;
};

}  // namespace

AlgebraicState CycloneModel::solve_algebraic(const DifferentialState& x,
                                             const AlgebraicState& y_guess) const {
  // Heat-capacity densities for residual scaling.
  double cv_m = 0.0;
  for (int sp = 0; sp < kNumSpecies; ++sp) {
    const double c = std::max(sp < kNumSolids ? x.C_s[sp] : x.C_g[sp], 0.0);
    if (c > 0.0) cv_m += c * db_->heat_capacity(sp, std::max(y_guess.T_m, 300.0));
  }
  cv_m = std::max(cv_m, 1.0);
  const double cv_r = refractory_.density * refractory_.cp_mass;
  const double cv_w = wall_.density * wall_.cp_mass;

  Vec scale(kNumAlg);
  scale << kTempScale, kTempScale, kTempScale, kPressScale;
  Vec v0(kNumAlg);
  v0 << y_guess.T_m, y_guess.T_r, y_guess.T_w, y_guess.P;

  auto residual = [&](const Vec& v, Vec& F) {
    AlgebraicState y{v[0], v[1], v[2], v[3]};
    try {
      const auto g = algebraic_residual(x, y);
      F.resize(kNumAlg);
      F[0] = g[0];
      F[1] = g[1] / cv_m;
      F[2] = g[2] / cv_r;
      F[3] = g[3] / cv_w;
      return F.allFinite();
    } catch (const std::exception&) {
      return false;
    }
  };

  const NewtonOutcome out = newton_solve(residual, v0, scale, solver_.newton_tol, 50);
  if (!out.converged)
    throw SolverError("solve_algebraic: Newton did not converge", out.residual_norm);
  return AlgebraicState{out.v[0], out.v[1], out.v[2], out.v[3]};
}

std::pair<DifferentialState, AlgebraicState> CycloneModel::step(const DifferentialState& x,
                                                               const AlgebraicState& y,
                                                               double dt, int* iters) const {
  if (!(dt > 0)) throw std::invalid_argument("step: dt must be positive");
  const Vec scale = variable_scales();
  Vec v0 = pack(x, y);

  double cv_m = 0.0;
  for (int sp = 0; sp < kNumSpecies; ++sp) {
    const double c = std::max(sp < kNumSolids ? x.C_s[sp] : x.C_g[sp], 0.0);
    if (c > 0.0) cv_m += c * db_->heat_capacity(sp, std::max(y.T_m, 300.0));
  }
  cv_m = std::max(cv_m, 1.0);
  const double cv_r = refractory_.density * refractory_.cp_mass;
  const double cv_w = wall_.density * wall_.cp_mass;

  auto residual = [&](const Vec& v, Vec& F) {
    DifferentialState xt;
    AlgebraicState yt;
    unpack(v, xt, yt);
    try {
      const RhsDetail d = evaluate(xt, yt);
      F.resize(kNV);
      for (int i = 0; i < kNumSolids; ++i)
        F[i] = (xt.C_s[i] - x.C_s[i] - dt * d.dx.C_s[i]) / kConcScale;
      for (int i = 0; i < kNumGases; ++i) {
        const int sp = kNumSolids + i;
        F[kNumSolids + i] = (xt.C_g[sp] - x.C_g[sp] - dt * d.dx.C_g[sp]) / kConcScale;
      }
      F[kNumDiff - 3] = (xt.U_m - x.U_m - dt * d.dx.U_m) / kEnergyScale;
      F[kNumDiff - 2] = (xt.U_r - x.U_r - dt * d.dx.U_r) / kEnergyScale;
      F[kNumDiff - 1] = (xt.U_w - x.U_w - dt * d.dx.U_w) / kEnergyScale;
      const auto g = algebraic_residual(xt, yt);
      F[kNumDiff + 0] = g[0];
      F[kNumDiff + 1] = g[1] / cv_m;
      F[kNumDiff + 2] = g[2] / cv_r;
      F[kNumDiff + 3] = g[3] / cv_w;
      return F.allFinite();
    } catch (const std::exception&) {
      return false;
    }
  };

  const NewtonOutcome out = newton_solve(residual, v0, scale, solver_.newton_tol, 25);
  if (iters) *iters = out.iters;
  if (!out.converged)
    throw SolverError("step: Newton did not converge", out.residual_norm);

  DifferentialState xn;
  AlgebraicState yn;
  unpack(out.v, xn, yn);
  for (int sp = 0; sp < kNumSpecies; ++sp) {
    double& c = sp < kNumSolids ? xn.C_s[sp] : xn.C_g[sp];
    if (c < -1e-9)
      throw SolverError("step: negative concentration for " + species_name(sp),
                        out.residual_norm);
    if (c < 0.0 && c > -1e-13) c = 0.0;  // FP noise at exhaustion
  }
  return {xn, yn};
}

TimeSeries CycloneModel::simulate(const DifferentialState& x0, const AlgebraicState& y0,
                                  double t_end) const {
  TimeSeries series;
  DifferentialState x = x0;
  AlgebraicState y = y0;
  series.push_back({0.0, x, y, report(x, y)});
  if (t_end <= 0.0) return series;

  double t = 0.0;
  double dt = solver_.dt_init;
  while (t < t_end * (1.0 - 1e-12)) {
    const double dtt = std::min(dt, t_end - t);
    int iters = 0;
    bool ok = true;
    DifferentialState x_full, x_half;
    AlgebraicState y_full, y_half;
    double err = 0.0;
    try {
      std::tie(x_full, y_full) = step(x, y, dtt, &iters);
      auto mid = step(x, y, 0.5 * dtt);
      std::tie(x_half, y_half) = step(mid.first, mid.second, 0.5 * dtt);
      // Step-doubling local error estimate over the differential states.
      const Vec vf = pack(x_full, y_full), vh = pack(x_half, y_half);
      const Vec scale = variable_scales();
      for (int i = 0; i < kNumDiff; ++i) {
        const double denom = std::max(std::abs(vh[i]), scale[i]);
        err = std::max(err, std::abs(vf[i] - vh[i]) / denom);
      }
    } catch (const SolverError&) {
      ok = false;
    }
    if (!ok || err > solver_.step_rel_tol) {
      dt = 0.5 * dtt;
      if (dt < solver_.dt_min)
        throw SolverError("simulate: step size underflow at t=" + std::to_string(t), err);
      continue;
    }
    x = x_half;
    y = y_half;
    t += dtt;
    series.push_back({t, x, y, report(x, y)});
    if (iters <= 3 && err < 0.3 * solver_.step_rel_tol)
      dt = std::min(dtt * 1.5, solver_.dt_max);
  }
  return series;
}

std::pair<DifferentialState, AlgebraicState> CycloneModel::steady_state(
    const DifferentialState& x_guess, const AlgebraicState& y_guess) const {
  const Vec scale = variable_scales();

  double cv_m = 0.0;
  for (int sp = 0; sp < kNumSpecies; ++sp) {
    const double c = std::max(sp < kNumSolids ? x_guess.C_s[sp] : x_guess.C_g[sp], 0.0);
    if (c > 0.0) cv_m += c * db_->heat_capacity(sp, std::max(y_guess.T_m, 300.0));
  }
  cv_m = std::max(cv_m, 1.0);
  const double cv_r = refractory_.density * refractory_.cp_mass;
  const double cv_w = wall_.density * wall_.cp_mass;

  auto residual = [&](const Vec& v, Vec& F) {
    DifferentialState xt;
    AlgebraicState yt;
    unpack(v, xt, yt);
    for (int i = 0; i < kNumDiff - 3; ++i)
      if (v[i] < -1e-6) return false;  // keep Newton out of unphysical territory
    try {
      const RhsDetail d = evaluate(xt, yt);
      F.resize(kNV);
      for (int i = 0; i < kNumSolids; ++i) F[i] = d.dx.C_s[i] / kConcScale;
      for (int i = 0; i < kNumGases; ++i)
        F[kNumSolids + i] = d.dx.C_g[kNumSolids + i] / kConcScale;
      F[kNumDiff - 3] = d.dx.U_m / kEnergyScale;
      F[kNumDiff - 2] = d.dx.U_r / kEnergyScale;
      F[kNumDiff - 1] = d.dx.U_w / kEnergyScale;
      const auto g = algebraic_residual(xt, yt);
      F[kNumDiff + 0] = g[0];
      F[kNumDiff + 1] = g[1] / cv_m;
      F[kNumDiff + 2] = g[2] / cv_r;
      F[kNumDiff + 3] = g[3] / cv_w;
      return F.allFinite();
    } catch (const std::exception&) {
      return false;
    }
  };

  NewtonOutcome out =
      newton_solve(residual, pack(x_guess, y_guess), scale, solver_.steady_tol,
                   solver_.max_newton);
  if (!out.converged) {
    // Pseudo-transient continuation: long implicit-Euler steps toward the
    // steady manifold, then retry Newton.
    DifferentialState x = x_guess;
    AlgebraicState y = y_guess;
    double dt = 1.0;
    int failures = 0;
    for (int k = 0; k < 80 && failures < 25; ++k) {
      try {
        std::tie(x, y) = step(x, y, dt);
        dt = std::min(dt * 3.0, 1e7);
      } catch (const SolverError&) {
        dt = std::max(dt / 4.0, solver_.dt_min);
        ++failures;
      }
      if (dt >= 1e7 && k > 20) break;
    }
    out = newton_solve(residual, pack(x, y), scale, solver_.steady_tol, solver_.max_newton);
    if (!out.converged)
      throw SolverError("steady_state: no convergence (best residual kept)",
                        out.residual_norm);
  }
  DifferentialState x;
  AlgebraicState y;
  unpack(out.v, x, y);
  for (int sp = 0; sp < kNumSpecies; ++sp) {
    double& c = sp < kNumSolids ? x.C_s[sp] : x.C_g[sp];
    if (c < 0.0 && c > -1e-10) c = 0.0;
  }
  return {x, y};
}

std::pair<DifferentialState, AlgebraicState> CycloneModel::initial_state() const {
  SpeciesVec C_s = zero_vec();
  for (int sp = 0; sp < kNumSolids; ++sp) C_s[sp] = 1.0;  // uniform solids
  const double Vhat_s = db_->volume(bc_.T_in, bc_.P_out, C_s, Phase::Solid);
  SpeciesVec C_g = zero_vec();
  const double n_total = (1.0 - Vhat_s) * bc_.P_out / (constants::R_gas * bc_.T_in);
  C_g[kN2] = 0.79 * n_total;
  C_g[kO2] = 0.21 * n_total;
  DifferentialState x =
      energies_from_temperatures(C_s, C_g, bc_.T_in, bc_.T_e, bc_.T_e, bc_.P_out);
  AlgebraicState y{bc_.T_in, bc_.T_e, bc_.T_e, bc_.P_out};
  return {x, solve_algebraic(x, y)};
}

DifferentialState CycloneModel::energies_from_temperatures(SpeciesVec C_s, SpeciesVec C_g,
                                                           double T_m, double T_r,
                                                           double T_w, double P) const {
  DifferentialState x;
  x.C_s = C_s;
  x.C_g = C_g;
  x.U_m = db_->mixture_internal_energy(T_m, P, C_s, C_g);
  x.U_r = refractory_.density * refractory_.cp_mass * (T_r - constants::T_ref);
  x.U_w = wall_.density * wall_.cp_mass * (T_w - constants::T_ref);
  return x;
}

Report CycloneModel::report(const DifferentialState& x, const AlgebraicState& y) const {
  const RhsDetail d = evaluate(x, y);
  Report r;
  r.rho_s = d.rho_s;
  r.rho_g = d.rho_g;
  r.Vhat_s = d.Vhat_s;
  r.eta_sal = d.fluxes.eta_sal;
  r.v_g_x = d.fluxes.v_g_x;

  const SpeciesDb& db = *db_;
  SpeciesVec Cs_in_cl = bc_.C_s_in, Cg_in_cl = bc_.C_g_in;
  for (double& c : Cs_in_cl) c = std::max(c, 0.0);
  for (double& c : Cg_in_cl) c = std::max(c, 0.0);
  r.mdot_s_in = geo_.A_in * bc_.v_in * db.phase_density(Cs_in_cl, Phase::Solid);
  r.mdot_g_in = geo_.A_in * bc_.v_in * db.phase_density(Cg_in_cl, Phase::Gas);
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp)
    r.mdot_g_in += d.false_air_rate[sp] * db.molar_mass(sp);

  for (int sp = 0; sp < kNumSolids; ++sp) {
    r.mdot_s_out += dg_.A_x * d.fluxes.N_s_x[sp] * db.molar_mass(sp);
    r.mdot_s_sep += dg_.A_sep * d.fluxes.N_s_sep[sp] * db.molar_mass(sp);
  }
  r.mdot_s_sep += d.fluxes.eta_sal * r.mdot_s_in;
  for (int sp = kNumSolids; sp < kNumSpecies; ++sp)
    r.mdot_g_out += dg_.A_x * d.fluxes.N_g_x[sp] * db.molar_mass(sp);

  r.eta = r.mdot_s_in > 0.0 ? total_efficiency(r.mdot_s_sep, r.mdot_s_in) : 0.0;
  return r;
}

double CycloneModel::algebraic_jacobian_rcond(const DifferentialState& x,
                                              const AlgebraicState& y) const {
  Vec v(kNumAlg);
  v << y.T_m, y.T_r, y.T_w, y.P;
  Vec scale(kNumAlg);
  scale << kTempScale, kTempScale, kTempScale, kPressScale;
  Mat J(kNumAlg, kNumAlg);
  const auto g0 = algebraic_residual(x, y);
  for (int j = 0; j < kNumAlg; ++j) {
    Vec vp = v;
    const double h = 1e-6 * std::max(std::abs(v[j]), scale[j]);
    vp[j] += h;
    AlgebraicState yp{vp[0], vp[1], vp[2], vp[3]};
    const auto gp = algebraic_residual(x, yp);
    for (int i = 0; i < kNumAlg; ++i) J(i, j) = (gp[i] - g0[i]) / (h / scale[j]);
  }
  const double n1 = J.cwiseAbs().rowwise().sum().maxCoeff();
  Eigen::FullPivLU<Mat> lu(J);
  if (!lu.isInvertible()) return 0.0;
  const Mat Jinv = lu.inverse();
  const double n2 = Jinv.cwiseAbs().rowwise().sum().maxCoeff();
  return 1.0 / (n1 * n2);
}

double settling_time(const TimeSeries& series,
                     const std::function<double(const Sample&)>& value, double band) {
  if (series.empty()) throw std::invalid_argument("settling_time: empty series");
  const double final_value = value(series.back());
  const double threshold = band * std::abs(final_value);
  double settled_at = series.front().t;
  bool inside = false;
  for (const Sample& s : series) {
    const bool in = std::abs(value(s) - final_value) <= threshold;
    if (in && !inside) settled_at = s.t;
    inside = in;
  }
  return inside ? settled_at : series.back().t;
}

}  // namespace cyclone
