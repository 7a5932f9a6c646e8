#pragma once

#include "mch/timestep.hpp"

namespace mch {

// Time series of the breaking monitor M = m u_x: per-time extrema, the
// location of the minimum, and the running integral of ||M||_inf.
struct BlowupMonitor {
  std::vector<double> t;
  std::vector<double> min_M;
  std::vector<double> max_M;
  std::vector<double> argmin_x;
  std::vector<double> cumulative;   // int_0^t ||M(tau)||_inf dtau
};

BlowupMonitor blowup_monitor(const Trajectory& traj);

// Guaranteed existence window from the W^{2,inf} size of the datum, with the
// majorant curve that dominates ||m(t)||_inf on it.
//
// gamma != 0: h0 = 2||u0|| + ||u0'|| + 2||u0''||,
//   T = ln(1 + 2|gamma|/h0^2) / (20|gamma|),
//   curve(t) = sqrt(2|gamma|) h0 / sqrt((h0^2+2|gamma|) e^{-20|gamma| t} - h0^2).
// gamma == 0: h0 = 3||u0|| + 3||u0'|| + ||u0''||,
//   T = 1/(2 h0^2), curve(t) = h0 / sqrt(1 - 2 h0^2 t).
// Both curves blow up exactly at T.
struct ExistenceBounds {
  double gamma = 0.0;
  double sup_u0 = 0.0;
  double sup_ux0 = 0.0;
  double sup_uxx0 = 0.0;
  double h0 = 0.0;
  double T_lower = 0.0;
  bool unbounded = false;   // u0 == 0, no finite scale

  double bound_curve(double t) const;
};

ExistenceBounds existence_lower_bound(const Field& u0, double gamma);

// max over recorded times of ||m(t)||_inf / bound_curve(t); the theory
// guarantees <= 1 for t < T_lower. Throws when a record leaves the curve's
// domain.
double m_sup_bound_check(const Trajectory& traj, const ExistenceBounds& bounds);

enum class BlowupCase { none, i, ii, iii };

const char* to_string(BlowupCase c);

// Finite-time breaking bounds from a probe point x0 (gamma = 0, m0 >= 0,
// m0(x0) > 0). Constants C0 = -u0'(x0), C1 = sqrt(2) I0 ||u0||_H1,
// C2 = sqrt(2) I0^2 ||u0||_H1. Hypotheses are tried in the order i, ii, iii;
// every case whose hypothesis holds is reported and the headline bound is the
// smallest applicable one.
struct BlowupBounds {
  double x0 = 0.0;
  double I0 = 0.0;
  double u0_h1 = 0.0;
  double m0_x0 = 0.0;
  double dxu0_x0 = 0.0;
  double C0 = 0.0, C1 = 0.0, C2 = 0.0;
  bool holds_i = false, holds_ii = false, holds_iii = false;
  BlowupCase headline = BlowupCase::none;
  double t_star = 0.0;        // case i
  double t_star_star = 0.0;   // case ii
  double t1 = 0.0;            // case iii
  double bound = 0.0;         // minimum applicable, 0 when none
};

BlowupBounds blowup_upper_bound(const Field& u0, double x0);

// Probe point maximizing the case-i margin (-u0'(x)) sqrt(m0(x)) over grid
// nodes with non-negligible momentum.
double best_probe_point(const Field& u0);

// Root of  sqrt(2)(I0 + s0)/(4 I0 H1) (e^{sqrt(2) I0 H1 t} - 1) - I0 t + 1/m0x0
// by bracketing bisection (absolute tolerance 1e-12); the case-iii bound.
double blowup_t1_root(double I0, double u0_h1, double dxu0_x0, double m0_x0);

// Sampled products (T0 - t) * min M over the final phase of a breaking run
// (the last 30% of the time span), plus their minimum. Errors when the
// trajectory did not break.
struct BlowupRateProbe {
  std::vector<double> t;
  std::vector<double> product;
  double min_product = 0.0;
};

BlowupRateProbe blowup_rate_probe(const Trajectory& traj, double t_break);

// Truncated exponential weight: 1 for x <= 0, e^{theta x} on (0, N),
// e^{theta N} beyond. Evaluated pointwise, never differentiated.
struct WeightProfile {
  double theta = 0.0;
  double N = 0.0;
  double operator()(double x) const;
};

// (||phi_N u||_inf, ||phi_N u_x||_inf); theta must be positive.
std::pair<double, double> persistence_norms(const SolverState& state,
                                            const WeightProfile& w);

// Least-squares slope of log|u| on the window [x_lo, x_hi]; a decaying right
// tail e^{-theta x} fits slope -theta.
double fitted_tail_exponent(const Field& u, double x_lo, double x_hi);

// Residuals of the traveling-wave ansatz u = phi(x - c t):
//   residual_pde      = c (phi - phi'') - (phi^2 - phi'^2)(phi - phi'')
//   residual_identity = phi^2 - phi'^2 - c
// A nontrivial smooth decaying profile cannot null residual_pde.
struct TravelingWaveProbe {
  double c = 0.0;
  Field residual_pde;
  Field residual_identity;
  double max_pde = 0.0;
  double max_identity = 0.0;
};

TravelingWaveProbe traveling_wave_residual(const Field& profile, double c);

// Compatibility residual || U_t - V_x + UV - VU ||_inf of the flatness pair
//   U = 1/2 [[-Q, lam m], [-lam m, Q]],        Q = sqrt(1 - gamma lam^2 / 2),
//   V = [[Q/lam^2 + Q W/2,            -(u - Q u_x)/lam - lam W m / 2],
//        [(u + Q u_x)/lam + lam W m/2, -Q/lam^2 - Q W/2]],  W = u^2 - u_x^2,
// evaluated over every snapshot with m_t taken from the transport form (no
// time differencing). Identically zero along exact solutions; decays with
// resolution on numerical ones. Throws when lam = 0 or Q is not real.
double zero_curvature_residual(const Trajectory& traj, double lambda);
double zero_curvature_residual(const SolverState& state, double lambda);

}  // namespace mch
