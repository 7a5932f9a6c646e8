#include "mch/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mch/spectral.hpp"

namespace mch {

namespace {

struct SnapshotSpectra {
  Spectrum u;
  Spectrum ux;
  Spectrum m;
};

struct PointSample {
  double u, ux, m;
};

PointSample eval_snapshot(const Grid& g, const SnapshotSpectra& s, double x) {
  return {eval_trig(g, s.u, x), eval_trig(g, s.ux, x), eval_trig(g, s.m, x)};
}

// Lagrange cubic in time through the snapshots around interval i at absolute
// time tq, sampled spatially at x.
PointSample eval_spacetime(const Grid& g,
                           const std::vector<double>& times,
                           const std::vector<SnapshotSpectra>& spectra, int i,
                           double tq, double x) {
  const int n = static_cast<int>(times.size());
  if (std::abs(tq - times[i]) < 1e-14) return eval_snapshot(g, spectra[i], x);
  if (i + 1 < n && std::abs(tq - times[i + 1]) < 1e-14)
    return eval_snapshot(g, spectra[i + 1], x);
  const int i0 = std::max(0, std::min(i - 1, n - 4));
  const int m = std::min(4, n - i0);
  double w[4] = {0, 0, 0, 0};
  for (int a = 0; a < m; ++a) {
    double num = 1.0, den = 1.0;
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      num *= tq - times[i0 + b];
      den *= times[i0 + a] - times[i0 + b];
    }
    w[a] = num / den;
  }
  PointSample out{0.0, 0.0, 0.0};
  for (int a = 0; a < m; ++a) {
    const PointSample p = eval_snapshot(g, spectra[i0 + a], x);
    out.u += w[a] * p.u;
    out.ux += w[a] * p.ux;
    out.m += w[a] * p.m;
  }
  return out;
}

}  // namespace

double FlowMap::min_qx() const {
  double m = qx.empty() ? 1.0 : qx[0][0];
  for (const auto& row : qx)
    for (double v : row) m = std::min(m, v);
  return m;
}

bool FlowMap::labels_monotone() const {
  for (const auto& row : q)
    for (size_t j = 1; j < row.size(); ++j)
      if (!(row[j] > row[j - 1])) return false;
  return true;
}

FlowMap evolve_flow(const Trajectory& traj, const std::vector<double>& labels) {
  if (traj.snapshots.size() < 2)
    throw std::invalid_argument("evolve_flow: trajectory needs at least two snapshots");
  const Grid& g = *traj.grid;

  std::vector<double> times;
  std::vector<SnapshotSpectra> spectra;
  times.reserve(traj.snapshots.size());
  spectra.reserve(traj.snapshots.size());
  for (const Snapshot& s : traj.snapshots) {
    times.push_back(s.t);
    SnapshotSpectra sp;
    sp.u = g.forward(s.u.v);
    sp.ux = sp.u;
    for (int k = 0; k < g.spectrum_size(); ++k)
      sp.ux[k] *= std::complex<double>(0.0, g.xi(k));
    sp.ux[g.spectrum_size() - 1] = 0.0;
    sp.m = g.forward(s.m.v);
    spectra.push_back(std::move(sp));
  }

  FlowMap flow;
  flow.labels = labels;
  flow.times = times;
  const int nl = static_cast<int>(labels.size());
  const int nt = static_cast<int>(times.size());
  flow.q.assign(nt, std::vector<double>(nl));
  flow.qx.assign(nt, std::vector<double>(nl));
  flow.q[0] = labels;
  std::fill(flow.qx[0].begin(), flow.qx[0].end(), 1.0);

  bool warned_box = false;
  for (int j = 0; j < nl; ++j) {
    double q = labels[j];
    double qx = 1.0;
    for (int i = 0; i + 1 < nt; ++i) {
      const double h = times[i + 1] - times[i];
      auto deriv = [&](double tq, double qq, double qxq, double& dq, double& dqx) {
        const PointSample p = eval_spacetime(g, times, spectra, i, tq, qq);
        dq = p.u * p.u - p.ux * p.ux;
        dqx = 2.0 * p.m * p.ux * qxq;
      };
      double k1q, k1x, k2q, k2x, k3q, k3x, k4q, k4x;
      deriv(times[i], q, qx, k1q, k1x);
      deriv(times[i] + 0.5 * h, q + 0.5 * h * k1q, qx + 0.5 * h * k1x, k2q, k2x);
      deriv(times[i] + 0.5 * h, q + 0.5 * h * k2q, qx + 0.5 * h * k2x, k3q, k3x);
      deriv(times[i + 1], q + h * k3q, qx + h * k3x, k4q, k4x);
      q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
      qx += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      if (!std::isfinite(q) || !std::isfinite(qx))
        throw std::runtime_error("evolve_flow: nonfinite characteristic");
      if (!warned_box && std::abs(q) > 0.9 * g.half_length()) {
        flow.warnings.push_back(
            "characteristic entered the outer 10% of the box where fields are "
            "assumed decayed");
        warned_box = true;
      }
      flow.q[i + 1][j] = q;
      flow.qx[i + 1][j] = qx;
    }
  }
  return flow;
}

double lagrangian_invariant_error(const Trajectory& traj, const FlowMap& flow) {
  if (traj.gamma != 0.0)
    throw std::invalid_argument(
        "lagrangian_invariant_error: identity requires gamma = 0");
  const Grid& g = *traj.grid;
  const int nl = static_cast<int>(flow.labels.size());
  const int nt = static_cast<int>(flow.times.size());

  const Spectrum m0_hat = g.forward(traj.snapshots.front().m.v);
  std::vector<double> m0(nl);
  for (int j = 0; j < nl; ++j) m0[j] = eval_trig(g, m0_hat, flow.labels[j]);

  double err = 0.0;
  for (int i = 0; i < nt; ++i) {
    const Spectrum m_hat = g.forward(traj.snapshots[i].m.v);
    for (int j = 0; j < nl; ++j) {
      const double m_here = eval_trig(g, m_hat, flow.q[i][j]);
      err = std::max(err, std::abs(m_here * flow.qx[i][j] - m0[j]));
    }
  }
  return err;
}

double sign_preservation_check(const Trajectory& traj) {
  if (traj.gamma != 0.0)
    throw std::invalid_argument("sign_preservation_check: requires gamma = 0");
  if (traj.records.empty())
    throw std::invalid_argument("sign_preservation_check: empty trajectory");
  if (traj.records.front().min_m < -1e-10)
    throw std::invalid_argument(
        "sign_preservation_check: initial momentum must be nonnegative");
  double worst = traj.records.front().min_m;
  for (const StepRecord& r : traj.records) worst = std::min(worst, r.min_m);
  return worst;
}

}  // namespace mch
