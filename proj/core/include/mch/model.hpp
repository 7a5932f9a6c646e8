#pragma once

#include "mch/field.hpp"
#include "mch/spectral.hpp"

namespace mch {

// One solver state: time, velocity u, momentum density m = u - u_xx, and the
// dispersion coefficient. m is kept consistent with u after every step.
struct SolverState {
  double t = 0.0;
  Field u;
  Field m;
  double gamma = 0.0;
};

// The conserved functionals and Hamiltonians evaluated on a state:
//   I0 = int u
//   I1 = int (u^2 + u_x^2)
//   I2 = int (u^4 + 2 u^2 u_x^2 - u_x^4/3 + 2 gamma u^2)
//   H0 = int m u           (equals I1 by parts)
//   H1 = I2 / 4
struct ConservedSet {
  double I0 = 0.0;
  double I1 = 0.0;
  double I2 = 0.0;
  double H0 = 0.0;
  double H1 = 0.0;
};

// The solver's alias-free band: |k| <= n/4, within which one-shot cubic
// products carry no aliasing.
int solver_band(const Grid& g);

// Sharp projection onto the solver band.
Field project_to_band(const Field& f);

// Smooth entry into the solver band: order-8 exponential rolloff across the
// band, zero above it. Sharp truncation rings on slowly decaying spectra
// (peaked profiles); this is how data and filtered steps enter the band.
Field solver_band_filter(const Field& f);

// m = (1 - d^2/dx^2) u.
Field m_from_u(const Field& u);

// u = (1 - d^2/dx^2)^{-1} m; left inverse of m_from_u on band-limited fields.
Field u_from_m(const Field& m);

// du/dt of the nonlocal velocity form,
//   u_t = -(u^2 - u_x^2/3) u_x
//         - d/dx (1-d^2)^{-1} (2u^3/3 + u u_x^2)
//         - (1-d^2)^{-1} (u_x^3/3 + gamma u_x),
// dealiased. This is the form the solver advances.
Field rhs_nonlocal(const Field& u, double gamma);

// dm/dt of the transport form,
//   m_t = -(u^2 - u_x^2) m_x - 2 u_x m^2 - gamma u_x,
// dealiased. Kept for diagnostics and cross-checks against rhs_nonlocal.
Field rhs_transport(const SolverState& state);

ConservedSet conserved(const SolverState& state);
ConservedSet conserved(const Field& u, double gamma);

SolverState make_state(Field u, double gamma, double t = 0.0);

}  // namespace mch
