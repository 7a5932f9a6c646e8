#include "mch/besov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mch {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double dyadic_chi(double xi) {
  const double r = std::abs(xi);
  constexpr double a = 1.0, b = 4.0 / 3.0;
  if (r <= a) return 1.0;
  if (r >= b) return 0.0;
  return bump(b - r) / (bump(b - r) + bump(r - a));
}

double dyadic_phi(double xi) { return dyadic_chi(xi / 2.0) - dyadic_chi(xi); }

DyadicSpec build_cutoffs(std::shared_ptr<const Grid> grid) {
  DyadicSpec spec;
  spec.grid = grid;
  const int ns = grid->spectrum_size();
  const double xi_max = grid->xi_max();

  // smallest q with 2^(q+1) >= xi_max, so the telescoping sum closes at the
  // top of the resolved band
  int q_max = 0;
  while (std::pow(2.0, q_max + 1) < xi_max) ++q_max;
  spec.q_max = q_max;

  spec.chi.resize(ns);
  for (int k = 0; k < ns; ++k) spec.chi[k] = dyadic_chi(grid->xi(k));
  spec.phi.assign(q_max + 1, std::vector<double>(ns));
  for (int q = 0; q <= q_max; ++q) {
    const double scale = std::pow(2.0, -q);
    for (int k = 0; k < ns; ++k)
      spec.phi[q][k] = dyadic_phi(scale * grid->xi(k));
  }

  // construction invariants on the tabulated values
  for (int k = 0; k < ns; ++k) {
    double sum = spec.chi[k];
    double sq = spec.chi[k] * spec.chi[k];
    for (int q = 0; q <= q_max; ++q) {
      sum += spec.phi[q][k];
      sq += spec.phi[q][k] * spec.phi[q][k];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::runtime_error("build_cutoffs: partition of unity failed");
    if (sq < 1.0 / 3.0 - 1e-12 || sq > 1.0 + 1e-12)
      throw std::runtime_error("build_cutoffs: quadratic bound failed");
  }
  for (int q = 0; q <= q_max; ++q)
    for (int qq = q + 2; qq <= q_max; ++qq)
      for (int k = 0; k < ns; ++k)
        if (spec.phi[q][k] != 0.0 && spec.phi[qq][k] != 0.0)
          throw std::runtime_error("build_cutoffs: annuli overlap at distance >= 2");
  return spec;
}

Field dyadic_block(const Field& f, int q, const DyadicSpec& spec) {
  if (q < -1 || q > spec.q_max)
    throw std::invalid_argument("dyadic_block: q out of range");
  const Grid& g = *f.grid;
  Spectrum s = g.forward(f.v);
  const std::vector<double>& w = (q == -1) ? spec.chi : spec.phi[q];
  for (int k = 0; k < g.spectrum_size(); ++k) s[k] *= w[k];
  return Field(f.grid, g.inverse(std::move(s)));
}

namespace {

double lp_norm(const Field& f, double p) {
  if (p >= kInfinity) return max_abs(f);
  double s = 0.0;
  for (double x : f.v) s += std::pow(std::abs(x), p);
  return std::pow(s * f.grid->dx(), 1.0 / p);
}

}  // namespace

double besov_norm(const Field& f, double s, double p, double r,
                  const DyadicSpec& spec) {
  if (p < 1.0 || r < 1.0)
    throw std::invalid_argument("besov_norm: p, r must lie in [1, inf]");
  double acc = 0.0;
  double sup = 0.0;
  for (int q = -1; q <= spec.q_max; ++q) {
    const double block = lp_norm(dyadic_block(f, q, spec), p);
    const double w = std::pow(2.0, q * s) * block;
    if (r >= kInfinity)
      sup = std::max(sup, w);
    else
      acc += std::pow(w, r);
  }
  return (r >= kInfinity) ? sup : std::pow(acc, 1.0 / r);
}

StabilityReport stability_experiment(const Field& u0, const Field& v0,
                                     double gamma, const StepControl& ctrl,
                                     double t_final) {
  StepControl c = ctrl;
  c.t_end = t_final;

  // sample on a fixed grid of output times shared by the two runs
  const int nsamp = 24;
  std::vector<double> outs(nsamp + 1);
  for (int i = 0; i <= nsamp; ++i) outs[i] = t_final * i / nsamp;

  const Trajectory tu = simulate(u0, gamma, c, outs);
  const Trajectory tv = simulate(v0, gamma, c, outs);

  StabilityReport rep;
  rep.term_u = tu.termination;
  rep.term_v = tv.termination;
  rep.partial = tu.termination != Termination::reached_t_end ||
                tv.termination != Termination::reached_t_end;

  const DyadicSpec spec = build_cutoffs(u0.grid);
  const size_t nshared = std::min(tu.snapshots.size(), tv.snapshots.size());
  double accum = 0.0;
  double prev_t = 0.0, prev_rate = 0.0;
  for (size_t i = 0; i < nshared; ++i) {
    const Snapshot& a = tu.snapshots[i];
    const Snapshot& b = tv.snapshots[i];
    const Field diff = a.u - b.u;
    const double d = besov_norm(diff, 1.5, 2.0, 1.0, spec);
    const double nu = besov_norm(a.u, 2.5, 2.0, 1.0, spec);
    const double nv = besov_norm(b.u, 2.5, 2.0, 1.0, spec);
    const double rate = nu * nu + nv * nv + std::abs(gamma);
    if (i > 0) accum += 0.5 * (a.t - prev_t) * (prev_rate + rate);
    prev_t = a.t;
    prev_rate = rate;
    rep.times.push_back(a.t);
    rep.d.push_back(d);
    rep.accumulated.push_back(accum);
  }
  rep.d0 = rep.d.empty() ? 0.0 : rep.d.front();
  double chat = 0.0;
  if (rep.d0 > 0.0) {
    for (size_t i = 1; i < rep.d.size(); ++i)
      if (rep.accumulated[i] > 0.0 && rep.d[i] > 0.0)
        chat = std::max(chat, std::log(rep.d[i] / rep.d0) / rep.accumulated[i]);
  }
  rep.c_hat = chat;
  return rep;
}

}  // namespace mch
