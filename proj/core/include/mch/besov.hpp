#pragma once

#include "mch/timestep.hpp"

namespace mch {

// Smooth dyadic frequency decomposition on a grid's resolved band.
//
// chi is a radial low-pass equal to 1 on [0,1] and supported in [0, 4/3],
// built from the standard C-infinity bridge; the annulus cutoff is the
// telescoping difference phi(xi) = chi(xi/2) - chi(xi), supported in
// [3/4, 8/3]. Blocks run q = -1..q_max with q_max chosen so that
// chi(2^-(q_max+1) xi) = 1 on every resolved xi, which makes
//   chi(xi) + sum_q phi(2^-q xi) = 1
// hold exactly on the whole resolved band.
struct DyadicSpec {
  std::shared_ptr<const Grid> grid;
  int q_max = 0;
  // default norm parameters, callers usually pass their own
  double s = 0.0;
  double p = 2.0;
  double r = 2.0;

  // tabulated chi(xi_k) and phi(2^-q xi_k) for q = 0..q_max
  std::vector<double> chi;
  std::vector<std::vector<double>> phi;
};

// chi evaluated at any wavenumber (radial in |xi|).
double dyadic_chi(double xi);
double dyadic_phi(double xi);

// Build and verify the cutoffs for a grid; throws when one of the
// construction invariants fails on the tabulated values.
DyadicSpec build_cutoffs(std::shared_ptr<const Grid> grid);

// Fourier multiplier by phi(2^-q xi), or by chi for q = -1.
Field dyadic_block(const Field& f, int q, const DyadicSpec& spec);

// || f ||_{B^s_{p,r}} = ( sum_q 2^{qsr} ||block_q f||_{L^p}^r )^{1/r},
// sup over q when r is infinite; block L^p norms by grid quadrature.
double besov_norm(const Field& f, double s, double p, double r,
                  const DyadicSpec& spec);

// Twin runs from u0 and v0: d(t) is the B^{3/2}_{2,1} norm of the difference,
// A(t) accumulates int (||u||^2 + ||v||^2 + |gamma|) dtau in B^{5/2}_{2,1},
// and c_hat is the smallest constant with d(t) <= d(0) exp(c_hat A(t)) over
// the sampled times.
struct StabilityReport {
  std::vector<double> times;
  std::vector<double> d;
  std::vector<double> accumulated;   // A(t)
  double d0 = 0.0;
  double c_hat = 0.0;
  bool partial = false;              // one of the runs ended early
  Termination term_u = Termination::reached_t_end;
  Termination term_v = Termination::reached_t_end;
};

StabilityReport stability_experiment(const Field& u0, const Field& v0,
                                     double gamma, const StepControl& ctrl,
                                     double t_final);

}  // namespace mch
