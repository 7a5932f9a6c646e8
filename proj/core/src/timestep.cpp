#include "mch/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mch {

namespace {

constexpr double kSpeedFloor = 1e-14;

double max_speed(const Field& u, const Field& ux) {
  double m = 0.0;
  for (int i = 0; i < u.size(); ++i)
    m = std::max(m, std::abs(u.v[i] * u.v[i] - ux.v[i] * ux.v[i]));
  return m;
}

ConservedSet conserved_from(const Field& u, const Field& ux, const Field& m,
                            double gamma) {
  const double dx = u.grid->dx();
  double i0 = 0.0, i1 = 0.0, i2 = 0.0, h0 = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const double uu = u.v[i], vx = ux.v[i];
    i0 += uu;
    i1 += uu * uu + vx * vx;
    i2 += uu * uu * uu * uu + 2.0 * uu * uu * vx * vx -
          vx * vx * vx * vx / 3.0 + 2.0 * gamma * uu * uu;
    h0 += m.v[i] * uu;
  }
  ConservedSet c;
  c.I0 = i0 * dx;
  c.I1 = i1 * dx;
  c.I2 = i2 * dx;
  c.H0 = h0 * dx;
  c.H1 = c.I2 / 4.0;
  return c;
}

// Refine an extremum of the trigonometric interpolant near a node by
// golden-section search over one cell each side. The breaking monitor's
// extrema live on a sharpening spike; node sampling alone oscillates as the
// spike slides between nodes.
template <typename F>
double refine_extremum(const Grid& g, double x_node, F&& value, bool maximize) {
  double a = x_node - g.dx(), b = x_node + g.dx();
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = value(c), fd = value(d);
  for (int it = 0; it < 32; ++it) {
    const bool pick_left = maximize ? (fc > fd) : (fc < fd);
    if (pick_left) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = value(d);
    }
  }
  return value(0.5 * (a + b));
}

StepRecord make_record(const SolverState& s, double dt, double prev_cum,
                       double prev_t, double prev_sup_mux) {
  const Grid& g = *s.u.grid;
  Spectrum uh = g.forward(s.u.v);
  Spectrum uxh = uh;
  Spectrum mh = uh;
  for (int k = 0; k < g.spectrum_size(); ++k) {
    uxh[k] *= std::complex<double>(0.0, g.xi(k));
    mh[k] *= 1.0 + g.xi(k) * g.xi(k);
  }
  uxh[g.spectrum_size() - 1] = 0.0;
  const Field ux(s.u.grid, g.inverse(uxh));

  StepRecord r;
  r.t = s.t;
  r.dt = dt;
  r.sup_u = max_abs(s.u);
  r.sup_ux = max_abs(ux);
  r.min_m = min_value(s.m);
  r.max_m = max_value(s.m);

  auto m_at = [&](double x) { return eval_trig(g, mh, x); };
  auto mux_at = [&](double x) { return eval_trig(g, mh, x) * eval_trig(g, uxh, x); };

  int arg_sup_m = 0, arg_min = 0, arg_max = 0;
  double mn = 0.0, mx = 0.0;
  for (int i = 0; i < s.u.size(); ++i) {
    if (std::abs(s.m.v[i]) > std::abs(s.m.v[arg_sup_m])) arg_sup_m = i;
    const double mux = s.m.v[i] * ux.v[i];
    if (mux < mn) {
      mn = mux;
      arg_min = i;
    }
    if (mux > mx) {
      mx = mux;
      arg_max = i;
    }
  }
  const bool m_positive = s.m.v[arg_sup_m] >= 0.0;
  const double sup_m_ref = refine_extremum(
      g, g.node(arg_sup_m),
      [&](double x) { return m_positive ? m_at(x) : -m_at(x); }, true);
  r.sup_m = std::max(max_abs(s.m), std::abs(sup_m_ref));
  r.min_mux = std::min(mn, refine_extremum(g, g.node(arg_min), mux_at, false));
  r.max_mux = std::max(mx, refine_extremum(g, g.node(arg_max), mux_at, true));
  r.argmin_mux_x = g.node(arg_min);

  const double sup_mux = std::max(std::abs(r.min_mux), std::abs(r.max_mux));
  r.cum_int_mux = prev_cum + 0.5 * (s.t - prev_t) * (prev_sup_mux + sup_mux);
  r.cons = conserved_from(s.u, ux, s.m, s.gamma);
  return r;
}

// Full step and two half steps; the half-step pair is the accepted result.
struct TrialStep {
  SolverState fine;
  double error = 0.0;
  bool finite = false;
};

// The error estimate compares unfiltered steps; the filter is stabilization,
// not time integration, and is applied once to the accepted state.
TrialStep trial(const SolverState& s, double dt, bool use_filter) {
  TrialStep out;
  const SolverState full = step_rk4(s, dt, false);
  const SolverState half = step_rk4(s, 0.5 * dt, false);
  out.fine = step_rk4(half, 0.5 * dt, false);
  out.finite = full.u.finite() && out.fine.u.finite();
  if (out.finite) {
    double e = 0.0;
    for (int i = 0; i < full.u.size(); ++i)
      e = std::max(e, std::abs(full.u.v[i] - out.fine.u.v[i]));
    out.error = e;
    if (use_filter) {
      out.fine.u = dealias_filtered(out.fine.u);
      out.fine.m = m_from_u(out.fine.u);
    }
  }
  return out;
}

}  // namespace

void StepControl::validate() const {
  if (!(0.0 < dt_min && dt_min <= dt_init && dt_init <= dt_max))
    throw std::invalid_argument("step control: need 0 < dt_min <= dt_init <= dt_max");
  if (!(error_tol > 0.0)) throw std::invalid_argument("step control: error_tol > 0");
  if (!(cfl_fraction > 0.0))
    throw std::invalid_argument("step control: cfl_fraction > 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("step control: t_end > 0");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::reached_t_end: return "reached_t_end";
    case Termination::blowup_detected: return "blowup_detected";
    case Termination::dt_underflow: return "dt_underflow";
    case Termination::nonfinite: return "nonfinite";
  }
  return "unknown";
}

SolverState step_rk4(const SolverState& state, double dt, bool use_filter) {
  const Field& u = state.u;
  const Field k1 = rhs_nonlocal(u, state.gamma);
  const Field k2 = rhs_nonlocal(axpy(u, 0.5 * dt, k1), state.gamma);
  const Field k3 = rhs_nonlocal(axpy(u, 0.5 * dt, k2), state.gamma);
  const Field k4 = rhs_nonlocal(axpy(u, dt, k3), state.gamma);

  Field unew = u;
  for (int i = 0; i < u.size(); ++i)
    unew.v[i] += dt / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
  if (use_filter) unew = solver_band_filter(unew);

  SolverState out;
  out.t = state.t + dt;
  out.gamma = state.gamma;
  out.m = m_from_u(unew);
  out.u = std::move(unew);
  return out;
}

double adapt_dt(const SolverState& state, const StepControl& ctrl) {
  ctrl.validate();
  const Field ux = spectral_deriv(state.u, 1);
  const double speed = std::max(kSpeedFloor, max_speed(state.u, ux));
  double dt = std::min(ctrl.dt_max, ctrl.cfl_fraction * state.u.grid->dx() / speed);
  dt = std::max(dt, ctrl.dt_min);
  while (true) {
    const TrialStep ts = trial(state, dt, false);
    if (ts.finite && ts.error <= ctrl.error_tol) return dt;
    if (0.5 * dt < ctrl.dt_min)
      throw std::runtime_error("adapt_dt: step size underflow");
    dt *= 0.5;
  }
}

Trajectory simulate(const Field& u0, double gamma, const StepControl& ctrl,
                    const std::vector<double>& outputs, const SimOptions& opts) {
  ctrl.validate();

  Trajectory traj;
  traj.grid = u0.grid;
  traj.gamma = gamma;

  if (boundary_magnitude(u0) > 1e-10)
    traj.warnings.push_back(
        "initial datum exceeds 1e-10 near the box boundary; periodic wraparound "
        "may contaminate the run");

  // the solver lives in the alias-free band; enter it through the smooth
  // rolloff so low-regularity data do not ring
  SolverState s = make_state(solver_band_filter(u0), gamma);
  traj.m_max_stop_used =
      ctrl.m_max_stop > 0.0
          ? ctrl.m_max_stop
          : 1e3 * (1.0 + max_abs(s.m) * max_abs(s.m));

  std::vector<double> marks(outputs.begin(), outputs.end());
  for (double& t : marks) {
    if (t < -1e-12 || t > ctrl.t_end * (1.0 + 1e-12) + 1e-15)
      throw std::invalid_argument("simulate: output times must lie in [0, t_end]");
    t = std::min(t, ctrl.t_end);
  }
  marks.push_back(ctrl.t_end);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-14; }),
              marks.end());

  traj.records.push_back(make_record(s, 0.0, 0.0, 0.0, 0.0));
  auto snap = [&](const SolverState& st) {
    traj.snapshots.push_back({st.t, st.u, st.m});
  };
  size_t next_mark = 0;
  while (next_mark < marks.size() && marks[next_mark] <= 1e-14) {
    snap(s);
    ++next_mark;
  }
  if (opts.store_every_step && traj.snapshots.empty()) snap(s);

  const Field ux0 = spectral_deriv(s.u, 1);
  double dt_prev = std::min(ctrl.dt_init, ctrl.dt_max);

  while (s.t < ctrl.t_end - 1e-14) {
    const Field ux = spectral_deriv(s.u, 1);
    const double speed = std::max(kSpeedFloor, max_speed(s.u, ux));
    double dt = std::min({ctrl.dt_max,
                          ctrl.cfl_fraction * s.u.grid->dx() / speed,
                          2.0 * dt_prev});
    dt = std::max(dt, ctrl.dt_min);
    const double target = marks[next_mark];
    bool clipped = false;
    if (s.t + dt >= target - 1e-14) {
      dt = target - s.t;
      clipped = true;
    }

    TrialStep ts = trial(s, dt, opts.use_filter);
    while (!(ts.finite && ts.error <= ctrl.error_tol)) {
      if (0.5 * dt < ctrl.dt_min) break;
      dt *= 0.5;
      clipped = false;
      ts = trial(s, dt, opts.use_filter);
    }
    if (!ts.finite) {
      traj.termination = Termination::nonfinite;
      return traj;
    }
    if (ts.error > ctrl.error_tol) {
      traj.termination = Termination::dt_underflow;
      return traj;
    }

    s = ts.fine;
    if (clipped) s.t = target;  // land exactly on the mark
    dt_prev = dt;

    const StepRecord& prev = traj.records.back();
    traj.records.push_back(make_record(
        s, dt, prev.cum_int_mux, prev.t,
        std::max(std::abs(prev.min_mux), std::abs(prev.max_mux))));
    const StepRecord& rec = traj.records.back();

    bool at_mark = false;
    if (clipped && next_mark < marks.size() &&
        std::abs(s.t - marks[next_mark]) <= 1e-14) {
      at_mark = true;
      ++next_mark;
    }
    if (opts.store_every_step || at_mark) snap(s);

    if (rec.min_mux < -traj.m_max_stop_used ||
        rec.sup_m > traj.m_max_stop_used) {
      traj.termination = Termination::blowup_detected;
      return traj;
    }
  }
  traj.termination = Termination::reached_t_end;
  return traj;
}

double PicardSequence::pairwise(int a, int b) const {
  double d = 0.0;
  for (size_t i = 0; i < times.size(); ++i) {
    const Field w = iterates[a][i] - iterates[b][i];
    d = std::max(d, h1_norm(w, spectral_deriv(w, 1)));
  }
  return d;
}

namespace {

// Lagrange cubic through the four stored samples around segment i, clamped at
// the ends; theta in [0,1] measures position within [t_i, t_{i+1}].
Field interp_series(const std::vector<Field>& series, int i, double theta,
                    double h) {
  const int n = static_cast<int>(series.size());
  if (theta <= 0.0) return series[i];
  if (theta >= 1.0) return series[std::min(i + 1, n - 1)];
  const int i0 = std::max(0, std::min(i - 1, n - 4));
  const double s = (i - i0) + theta;  // position in units of h from t_{i0}
  double w[4];
  for (int a = 0; a < 4; ++a) {
    double num = 1.0, den = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      num *= s - b;
      den *= a - b;
    }
    w[a] = num / den;
  }
  (void)h;
  Field out(series[i0].grid);
  for (int j = 0; j < out.size(); ++j)
    out.v[j] = w[0] * series[i0].v[j] + w[1] * series[i0 + 1].v[j] +
               w[2] * series[i0 + 2].v[j] + w[3] * series[i0 + 3].v[j];
  return out;
}

// dm/dt of the frozen-coefficient linear transport step: coefficients from
// the previous iterate (w, wx, p = previous m), unknown m. Assembled and
// projected exactly like the solver's own transport form, so the fixed
// point of the iteration is the band-Galerkin solution.
Field linear_rhs(const Field& m, const Field& w, const Field& wx,
                 const Field& p, double gamma) {
  const Field mx = spectral_deriv(m, 1);
  Field out(m.grid);
  for (int i = 0; i < m.size(); ++i) {
    const double adv = w.v[i] * w.v[i] - wx.v[i] * wx.v[i];
    out.v[i] = -adv * mx.v[i] - 2.0 * wx.v[i] * p.v[i] * p.v[i] -
               gamma * wx.v[i];
  }
  return project_to_band(out);
}

}  // namespace

PicardSequence friedrichs_iterate(const Field& u0, double gamma, int n_iter,
                                  const StepControl& ctrl) {
  if (n_iter < 2) throw std::invalid_argument("friedrichs_iterate: need N >= 2");
  ctrl.validate();

  const int steps = std::max(4, static_cast<int>(std::ceil(ctrl.t_end / ctrl.dt_init)));
  const double h = ctrl.t_end / steps;

  PicardSequence seq;
  seq.times.resize(steps + 1);
  for (int i = 0; i <= steps; ++i) seq.times[i] = i * h;

  seq.iterates.push_back(
      std::vector<Field>(steps + 1, Field(u0.grid)));  // u^(0) = 0

  for (int j = 0; j < n_iter; ++j) {
    const auto& prev_u = seq.iterates.back();
    std::vector<Field> prev_ux(steps + 1, Field(u0.grid));
    std::vector<Field> prev_m(steps + 1, Field(u0.grid));
    for (int i = 0; i <= steps; ++i) {
      prev_ux[i] = spectral_deriv(prev_u[i], 1);
      prev_m[i] = m_from_u(prev_u[i]);
    }

    const double cut = std::min((4.0 / 3.0) * std::pow(2.0, j + 1),
                                u0.grid->xi(solver_band(*u0.grid)));
    Field u = low_pass(solver_band_filter(u0), cut);
    Field m = m_from_u(u);

    std::vector<Field> traj_u(steps + 1, Field(u0.grid));
    traj_u[0] = u;
    for (int i = 0; i < steps; ++i) {
      auto coeff = [&](double theta) {
        return std::array<Field, 3>{interp_series(prev_u, i, theta, h),
                                    interp_series(prev_ux, i, theta, h),
                                    interp_series(prev_m, i, theta, h)};
      };
      const auto c0 = coeff(0.0);
      const auto ch = coeff(0.5);
      const auto c1 = coeff(1.0);
      const Field k1 = linear_rhs(m, c0[0], c0[1], c0[2], gamma);
      const Field k2 = linear_rhs(axpy(m, 0.5 * h, k1), ch[0], ch[1], ch[2], gamma);
      const Field k3 = linear_rhs(axpy(m, 0.5 * h, k2), ch[0], ch[1], ch[2], gamma);
      const Field k4 = linear_rhs(axpy(m, h, k3), c1[0], c1[1], c1[2], gamma);
      for (int q = 0; q < m.size(); ++q)
        m.v[q] += h / 6.0 * (k1.v[q] + 2.0 * k2.v[q] + 2.0 * k3.v[q] + k4.v[q]);
      if (!m.finite())
        throw std::runtime_error("friedrichs_iterate: nonfinite iterate");
      traj_u[i + 1] = u_from_m(m);
    }
    seq.iterates.push_back(std::move(traj_u));
  }

  for (int j = 0; j + 1 < static_cast<int>(seq.iterates.size()); ++j)
    seq.distances.push_back(seq.pairwise(j + 1, j));
  return seq;
}

}  // namespace mch
