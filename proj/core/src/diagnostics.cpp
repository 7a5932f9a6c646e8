#include "mch/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mch/spectral.hpp"

namespace mch {

BlowupMonitor blowup_monitor(const Trajectory& traj) {
  BlowupMonitor mon;
  for (const StepRecord& r : traj.records) {
    mon.t.push_back(r.t);
    mon.min_M.push_back(r.min_mux);
    mon.max_M.push_back(r.max_mux);
    mon.argmin_x.push_back(r.argmin_mux_x);
    mon.cumulative.push_back(r.cum_int_mux);
  }
  return mon;
}

double ExistenceBounds::bound_curve(double t) const {
  if (unbounded) return 0.0;
  if (gamma != 0.0) {
    const double g2 = 2.0 * std::abs(gamma);
    const double denom = (h0 * h0 + g2) * std::exp(-10.0 * g2 * t) - h0 * h0;
    if (denom <= 0.0)
      throw std::domain_error("bound_curve: t beyond the curve's domain");
    return std::sqrt(g2) * h0 / std::sqrt(denom);
  }
  const double denom = 1.0 - 2.0 * h0 * h0 * t;
  if (denom <= 0.0)
    throw std::domain_error("bound_curve: t beyond the curve's domain");
  return h0 / std::sqrt(denom);
}

ExistenceBounds existence_lower_bound(const Field& u0, double gamma) {
  ExistenceBounds b;
  b.gamma = gamma;
  b.sup_u0 = max_abs(u0);
  b.sup_ux0 = max_abs(spectral_deriv(u0, 1));
  b.sup_uxx0 = max_abs(spectral_deriv(u0, 2));
  if (b.sup_u0 == 0.0) {
    b.unbounded = true;
    b.T_lower = kInfinity;
    return b;
  }
  if (gamma != 0.0) {
    b.h0 = 2.0 * b.sup_u0 + b.sup_ux0 + 2.0 * b.sup_uxx0;
    b.T_lower = std::log(1.0 + 2.0 * std::abs(gamma) / (b.h0 * b.h0)) /
                (20.0 * std::abs(gamma));
  } else {
    b.h0 = 3.0 * b.sup_u0 + 3.0 * b.sup_ux0 + b.sup_uxx0;
    b.T_lower = 1.0 / (2.0 * b.h0 * b.h0);
  }
  return b;
}

double m_sup_bound_check(const Trajectory& traj, const ExistenceBounds& bounds) {
  if (bounds.unbounded) return 0.0;
  double worst = 0.0;
  for (const StepRecord& r : traj.records) {
    if (r.t >= bounds.T_lower)
      throw std::domain_error("m_sup_bound_check: record beyond T_lower");
    worst = std::max(worst, r.sup_m / bounds.bound_curve(r.t));
  }
  return worst;
}

const char* to_string(BlowupCase c) {
  switch (c) {
    case BlowupCase::none: return "none";
    case BlowupCase::i: return "i";
    case BlowupCase::ii: return "ii";
    case BlowupCase::iii: return "iii";
  }
  return "unknown";
}

double blowup_t1_root(double I0, double u0_h1, double dxu0_x0, double m0_x0) {
  const double c1 = std::sqrt(2.0) * I0 * u0_h1;
  const double lead = std::sqrt(2.0) * (I0 + dxu0_x0) / (4.0 * I0 * u0_h1);
  auto F = [&](double t) {
    return lead * (std::exp(c1 * t) - 1.0) - I0 * t + 1.0 / m0_x0;
  };
  double hi = 1.0;
  int guard = 0;
  while (F(hi) > 0.0) {
    hi *= 2.0;
    if (++guard > 200)
      throw std::runtime_error("blowup_t1_root: no sign change found");
  }
  double lo = 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BlowupBounds blowup_upper_bound(const Field& u0, double x0) {
  const Grid& g = *u0.grid;
  const Field m0 = m_from_u(u0);
  if (min_value(m0) < -1e-10)
    throw std::invalid_argument("blowup_upper_bound: m0 must be nonnegative");
  const Field ux0 = spectral_deriv(u0, 1);

  // snap the probe to the nearest node so m0(x0), u0'(x0) are plain samples
  int j = static_cast<int>(std::lround((x0 + g.half_length()) / g.dx()));
  j = std::clamp(j, 0, g.size() - 1);

  BlowupBounds b;
  b.x0 = g.node(j);
  b.I0 = integrate(u0);
  b.u0_h1 = h1_norm(u0, ux0);
  b.m0_x0 = m0.v[j];
  b.dxu0_x0 = ux0.v[j];
  if (!(b.m0_x0 > 1e-12 * max_abs(m0)))
    throw std::invalid_argument("blowup_upper_bound: m0(x0) must be positive");
  b.C0 = -b.dxu0_x0;
  b.C1 = std::sqrt(2.0) * b.I0 * b.u0_h1;
  b.C2 = std::sqrt(2.0) * b.I0 * b.I0 * b.u0_h1;

  const double s0 = b.dxu0_x0;
  double best = kInfinity;

  if (s0 < -b.u0_h1 * std::sqrt(b.I0 / b.m0_x0)) {
    b.holds_i = true;
    const double den = b.I0 * b.u0_h1 * b.u0_h1;
    const double ratio = b.C0 / den;
    b.t_star = ratio - std::sqrt(ratio * ratio - 1.0 / (den * b.m0_x0));
    if (b.t_star < best) {
      best = b.t_star;
      b.headline = BlowupCase::i;
    }
  }
  if (s0 > -b.I0 &&
      1.0 / b.m0_x0 - s0 / (std::sqrt(2.0) * b.I0 * b.u0_h1) <
          std::log(b.I0 / (b.I0 + s0)) / (std::sqrt(2.0) * b.u0_h1)) {
    b.holds_ii = true;
    b.t_star_star =
        std::log(b.I0 / (b.I0 + s0)) / (std::sqrt(2.0) * b.I0 * b.u0_h1);
    if (b.t_star_star < best) {
      best = b.t_star_star;
      b.headline = BlowupCase::ii;
    }
  }
  if (s0 <= -b.I0) {
    b.holds_iii = true;
    b.t1 = blowup_t1_root(b.I0, b.u0_h1, s0, b.m0_x0);
    if (b.t1 < best) {
      best = b.t1;
      b.headline = BlowupCase::iii;
    }
  }
  b.bound = (b.headline == BlowupCase::none) ? 0.0 : best;
  return b;
}

double best_probe_point(const Field& u0) {
  const Field m0 = m_from_u(u0);
  const Field ux0 = spectral_deriv(u0, 1);
  const double floor = 1e-8 * std::max(1e-300, max_abs(m0));
  int best = -1;
  double margin = -kInfinity;
  for (int i = 0; i < u0.size(); ++i) {
    if (m0.v[i] <= floor) continue;
    const double v = -ux0.v[i] * std::sqrt(m0.v[i]);
    if (v > margin) {
      margin = v;
      best = i;
    }
  }
  if (best < 0)
    throw std::invalid_argument("best_probe_point: momentum vanishes everywhere");
  return u0.grid->node(best);
}

BlowupRateProbe blowup_rate_probe(const Trajectory& traj, double t_break) {
  if (traj.termination != Termination::blowup_detected &&
      traj.termination != Termination::dt_underflow)
    throw std::invalid_argument("blowup_rate_probe: trajectory did not break");
  const double t0 = traj.records.front().t;
  const double window = 0.3 * (t_break - t0);
  BlowupRateProbe probe;
  probe.min_product = 0.0;
  for (const StepRecord& r : traj.records) {
    if (r.t < t_break - window || r.t > t_break) continue;
    const double p = (t_break - r.t) * r.min_mux;
    probe.t.push_back(r.t);
    probe.product.push_back(p);
    probe.min_product = std::min(probe.min_product, p);
  }
  return probe;
}

double WeightProfile::operator()(double x) const {
  if (x <= 0.0) return 1.0;
  if (x >= N) return std::exp(theta * N);
  return std::exp(theta * x);
}

std::pair<double, double> persistence_norms(const SolverState& state,
                                            const WeightProfile& w) {
  if (!(w.theta > 0.0))
    throw std::invalid_argument("persistence_norms: theta must be positive");
  const Field ux = spectral_deriv(state.u, 1);
  double nu = 0.0, nux = 0.0;
  for (int i = 0; i < state.u.size(); ++i) {
    const double phi = w(state.u.grid->node(i));
    nu = std::max(nu, phi * std::abs(state.u.v[i]));
    nux = std::max(nux, phi * std::abs(ux.v[i]));
  }
  return {nu, nux};
}

double fitted_tail_exponent(const Field& u, double x_lo, double x_hi) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (int i = 0; i < u.size(); ++i) {
    const double x = u.grid->node(i);
    if (x < x_lo || x > x_hi) continue;
    const double a = std::abs(u.v[i]);
    if (a <= 0.0) continue;
    const double y = std::log(a);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("fitted_tail_exponent: window too small");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TravelingWaveProbe traveling_wave_residual(const Field& profile, double c) {
  const Field d1 = spectral_deriv(profile, 1);
  const Field d2 = spectral_deriv(profile, 2);
  TravelingWaveProbe probe;
  probe.c = c;
  probe.residual_pde = Field(profile.grid);
  probe.residual_identity = Field(profile.grid);
  for (int i = 0; i < profile.size(); ++i) {
    const double phi = profile.v[i], px = d1.v[i], pxx = d2.v[i];
    const double mlike = phi - pxx;
    probe.residual_pde.v[i] = c * mlike - (phi * phi - px * px) * mlike;
    probe.residual_identity.v[i] = phi * phi - px * px - c;
  }
  probe.max_pde = max_abs(probe.residual_pde);
  probe.max_identity = max_abs(probe.residual_identity);
  return probe;
}

double zero_curvature_residual(const SolverState& state, double lambda) {
  if (lambda == 0.0)
    throw std::invalid_argument("zero_curvature_residual: lambda must be nonzero");
  const double q2 = 1.0 - state.gamma * lambda * lambda / 2.0;
  if (!(q2 > 0.0))
    throw std::invalid_argument(
        "zero_curvature_residual: 1 - gamma lambda^2/2 must be positive");
  const double Q = std::sqrt(q2);
  const Grid& g = *state.u.grid;
  const int n = g.size();

  const Field ux = spectral_deriv(state.u, 1);
  const Field mx = spectral_deriv(state.m, 1);
  // raw transport-form m_t; the solver's dealiasing pass would clip exactly
  // the high modes the identity cancels against V_x
  Field mt(state.u.grid);
  for (int i = 0; i < n; ++i) {
    const double w = state.u.v[i] * state.u.v[i] - ux.v[i] * ux.v[i];
    mt.v[i] = -w * mx.v[i] -
              2.0 * ux.v[i] * state.m.v[i] * state.m.v[i] -
              state.gamma * ux.v[i];
  }

  Field v11(state.u.grid), v12(state.u.grid), v21(state.u.grid);
  for (int i = 0; i < n; ++i) {
    const double u = state.u.v[i], vx = ux.v[i], m = state.m.v[i];
    const double w = u * u - vx * vx;
    v11.v[i] = Q / (lambda * lambda) + 0.5 * Q * w;
    v12.v[i] = -(u - Q * vx) / lambda - 0.5 * lambda * w * m;
    v21.v[i] = (u + Q * vx) / lambda + 0.5 * lambda * w * m;
  }
  const Field v11x = spectral_deriv(v11, 1);
  const Field v12x = spectral_deriv(v12, 1);
  const Field v21x = spectral_deriv(v21, 1);

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m = state.m.v[i];
    const double r11 = -v11x.v[i] + 0.5 * lambda * m * (v12.v[i] + v21.v[i]);
    const double r12 = 0.5 * lambda * mt.v[i] - v12x.v[i] - Q * v12.v[i] -
                       lambda * m * v11.v[i];
    const double r21 = -0.5 * lambda * mt.v[i] - v21x.v[i] + Q * v21.v[i] -
                       lambda * m * v11.v[i];
    worst = std::max({worst, std::abs(r11), std::abs(r12), std::abs(r21)});
  }
  return worst;
}

double zero_curvature_residual(const Trajectory& traj, double lambda) {
  if (traj.snapshots.empty())
    throw std::invalid_argument("zero_curvature_residual: no snapshots stored");
  double worst = 0.0;
  for (const Snapshot& s : traj.snapshots) {
    SolverState st;
    st.t = s.t;
    st.u = s.u;
    st.m = s.m;
    st.gamma = traj.gamma;
    worst = std::max(worst, zero_curvature_residual(st, lambda));
  }
  return worst;
}

}  // namespace mch
