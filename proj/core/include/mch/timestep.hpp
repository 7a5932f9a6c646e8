#pragma once

#include <string>
#include <vector>

#include "mch/model.hpp"

namespace mch {

// stands in for an infinite norm parameter or an unbounded time
constexpr double kInfinity = 1e308;

struct StepControl {
  double dt_init = 1e-3;
  double dt_min = 1e-10;
  double dt_max = 0.1;
  double error_tol = 1e-9;     // max-norm step-doubling tolerance
  double cfl_fraction = 0.5;
  double m_max_stop = 0.0;     // <= 0: auto, 1e3 * (1 + ||m0||_inf^2)
  double t_end = 1.0;

  void validate() const;
};

enum class Termination { reached_t_end, blowup_detected, dt_underflow, nonfinite };

const char* to_string(Termination t);

// One accepted step's diagnostics. M = m * u_x is the breaking monitor.
struct StepRecord {
  double t = 0.0;
  double dt = 0.0;
  double sup_u = 0.0;
  double sup_ux = 0.0;
  double sup_m = 0.0;
  double min_mux = 0.0;
  double max_mux = 0.0;
  double argmin_mux_x = 0.0;
  double min_m = 0.0;
  double max_m = 0.0;
  double cum_int_mux = 0.0;   // int_0^t ||(m u_x)(tau)||_inf dtau, trapezoid
  ConservedSet cons;
};

struct Snapshot {
  double t = 0.0;
  Field u;
  Field m;
};

struct Trajectory {
  std::shared_ptr<const Grid> grid;
  double gamma = 0.0;
  double m_max_stop_used = 0.0;
  std::vector<StepRecord> records;     // one per accepted step, plus t = 0
  std::vector<Snapshot> snapshots;     // requested output times (and more)
  Termination termination = Termination::reached_t_end;
  std::vector<std::string> warnings;

  double final_time() const { return records.empty() ? 0.0 : records.back().t; }
};

struct SimOptions {
  bool store_every_step = false;  // snapshot every accepted step (flow runs)
  bool use_filter = false;        // exponential filter for peaked data
};

// One classical 4-stage Runge-Kutta step of the nonlocal velocity form;
// m is rebuilt from u and the result dealiased.
SolverState step_rk4(const SolverState& state, double dt,
                     bool use_filter = false);

// The accepted step size at this state: the CFL candidate
// min(dt_max, cfl_fraction * dx / max(eps, max|u^2-u_x^2|)) shrunk by
// step-doubling error control until the two-half-step difference meets
// error_tol. Throws if that would push dt below dt_min.
double adapt_dt(const SolverState& state, const StepControl& ctrl);

// Integrate from u0 to ctrl.t_end or termination, landing exactly on each
// requested output time. Deterministic: identical inputs give identical
// per-step records.
Trajectory simulate(const Field& u0, double gamma, const StepControl& ctrl,
                    const std::vector<double>& outputs,
                    const SimOptions& opts = {});

// The linearized iteration scheme: u^(0) = 0 and each u^(n+1) solves the
// frozen-coefficient transport equation
//   (d/dt + [(u^(n))^2 - (u^(n)_x)^2] d/dx) m^(n+1)
//        = -2 u^(n)_x (m^(n))^2 - gamma u^(n)_x
// with initial datum the sharp low-pass truncation of u0 at xi <= (4/3) 2^(n+1),
// marched with fixed-step RK4 on a shared time grid.
struct PicardSequence {
  std::vector<double> times;
  // iterates[j][i] = u^(j) at times[i], j = 0..N
  std::vector<std::vector<Field>> iterates;
  // d_j = sup over times of the discrete H1 distance between u^(j+1), u^(j)
  std::vector<double> distances;

  // sup-in-time H1 distance between two stored iterates
  double pairwise(int a, int b) const;
};

PicardSequence friedrichs_iterate(const Field& u0, double gamma, int n_iter,
                                  const StepControl& ctrl);

}  // namespace mch
