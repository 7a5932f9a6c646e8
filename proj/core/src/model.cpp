#include "mch/model.hpp"

#include <cmath>

namespace mch {

Field m_from_u(const Field& u) {
  Spectrum s = u.grid->forward(u.v);
  for (int k = 0; k < u.grid->spectrum_size(); ++k)
    s[k] *= 1.0 + u.grid->xi(k) * u.grid->xi(k);
  return Field(u.grid, u.grid->inverse(std::move(s)));
}

Field u_from_m(const Field& m) { return helmholtz_inv(m); }

int solver_band(const Grid& g) { return g.size() / 4; }

Field project_to_band(const Field& f) {
  const Grid& g = *f.grid;
  Spectrum s = g.forward(f.v);
  for (int k = solver_band(g) + 1; k < g.spectrum_size(); ++k) s[k] = 0.0;
  return Field(f.grid, g.inverse(std::move(s)));
}

Field solver_band_filter(const Field& f) {
  const Grid& g = *f.grid;
  const int cut = solver_band(g);
  Spectrum s = g.forward(f.v);
  for (int k = 0; k < g.spectrum_size(); ++k) {
    if (k > cut) {
      s[k] = 0.0;
      continue;
    }
    const double r = static_cast<double>(k) / cut;
    s[k] *= std::exp(-36.0 * std::pow(r, 16));
  }
  return Field(f.grid, g.inverse(std::move(s)));
}

namespace {

// Project a pointwise-assembled nonlinearity onto the solver band |k| <= n/4.
// With that cutoff the one-shot cubic products are alias-free, so the
// truncated dynamics is the true Galerkin system and carries the conserved
// functionals to integrator accuracy. (The common 2/3 rule is alias-free
// only for quadratic products; at marginal resolution its cubic aliasing
// shows up as invariant drift.)
std::vector<double> project_assembled(const Grid& g, std::vector<double> p) {
  Spectrum s = g.forward(p);
  for (int k = solver_band(g) + 1; k < g.spectrum_size(); ++k) s[k] = 0.0;
  return g.inverse(std::move(s));
}

}  // namespace

Field rhs_nonlocal(const Field& u, double gamma) {
  const Grid& g = *u.grid;
  const int n = g.size();
  const int ns = g.spectrum_size();

  Spectrum uh = g.forward(u.v);
  Spectrum uxh = uh;
  for (int k = 0; k < ns; ++k) uxh[k] *= std::complex<double>(0.0, g.xi(k));
  uxh[ns - 1] = 0.0;
  const std::vector<double> ux = g.inverse(std::move(uxh));

  std::vector<double> local(n), a(n), b(n);
  for (int i = 0; i < n; ++i) {
    const double uu = u.v[i], vx = ux[i];
    local[i] = -(uu * uu - vx * vx / 3.0) * vx;
    a[i] = (2.0 / 3.0) * uu * uu * uu + uu * vx * vx;
    b[i] = vx * vx * vx / 3.0 + gamma * vx;
  }
  local = project_assembled(g, std::move(local));
  const std::vector<double> ap = project_assembled(g, std::move(a));
  const std::vector<double> bp = project_assembled(g, std::move(b));

  Spectrum ah = g.forward(ap);
  Spectrum bh = g.forward(bp);
  for (int k = 0; k < ns; ++k) {
    const double h = g.helmholtz_symbol(k);
    ah[k] *= std::complex<double>(0.0, g.xi(k)) * h;
    bh[k] *= h;
  }
  ah[ns - 1] = 0.0;
  const std::vector<double> da = g.inverse(std::move(ah));
  const std::vector<double> hb = g.inverse(std::move(bh));

  Field out(u.grid);
  for (int i = 0; i < n; ++i) out.v[i] = local[i] - da[i] - hb[i];
  return out;
}

Field rhs_transport(const SolverState& state) {
  const Grid& g = *state.u.grid;
  const int n = g.size();
  const Field ux = spectral_deriv(state.u, 1);
  const Field mx = spectral_deriv(state.m, 1);

  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) {
    const double w = state.u.v[i] * state.u.v[i] - ux.v[i] * ux.v[i];
    rhs[i] = -w * mx.v[i] - 2.0 * ux.v[i] * state.m.v[i] * state.m.v[i] -
             state.gamma * ux.v[i];
  }
  return Field(state.u.grid, project_assembled(g, std::move(rhs)));
}

ConservedSet conserved(const Field& u, double gamma) {
  const Field ux = spectral_deriv(u, 1);
  const Field m = m_from_u(u);
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

ConservedSet conserved(const SolverState& state) {
  return conserved(state.u, state.gamma);
}

SolverState make_state(Field u, double gamma, double t) {
  SolverState s;
  s.t = t;
  s.m = m_from_u(u);
  s.u = std::move(u);
  s.gamma = gamma;
  return s;
}

}  // namespace mch
