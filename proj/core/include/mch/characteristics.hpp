#pragma once

#include "mch/timestep.hpp"

namespace mch {

// Particle paths q(t, x0) moving with speed u^2 - u_x^2, with the deformation
// q_x integrated alongside through d(q_x)/dt = 2 (m u_x)(t, q) q_x.
struct FlowMap {
  std::vector<double> labels;            // initial positions x0_j
  std::vector<double> times;             // snapshot times of the trajectory
  std::vector<std::vector<double>> q;    // q[i][j] at times[i], labels[j]
  std::vector<std::vector<double>> qx;   // deformation, same layout
  std::vector<std::string> warnings;

  double min_qx() const;
  // q(t, .) strictly increasing in the label at every recorded time
  bool labels_monotone() const;
};

// Integrate the flow through the trajectory's stored snapshots. Fields are
// evaluated at off-grid positions by trigonometric interpolation and between
// snapshots by cubic interpolation in time, so the trajectory should store
// one snapshot per accepted step (SimOptions::store_every_step).
FlowMap evolve_flow(const Trajectory& traj, const std::vector<double>& labels);

// max over labels and recorded times of |m(t, q) q_x - m0(x0)|; the identity
// holds only without dispersion, so gamma != 0 is a precondition error.
double lagrangian_invariant_error(const Trajectory& traj, const FlowMap& flow);

// Most negative value of m over the run; requires gamma = 0 and m0 >= 0.
double sign_preservation_check(const Trajectory& traj);

}  // namespace mch
