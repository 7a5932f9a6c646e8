#include "mch/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mch/besov.hpp"
#include "mch/characteristics.hpp"
#include "mch/diagnostics.hpp"
#include "mch/initial_data.hpp"

namespace mch {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_timeseries(const fs::path& path, const Trajectory& traj) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "t,dt,sup_u,sup_ux,sup_m,min_mux,max_mux,cum_int_mux,I0,I1,I2,H0,H1\n";
  for (const StepRecord& r : traj.records) {
    os << num(r.t) << ',' << num(r.dt) << ',' << num(r.sup_u) << ','
       << num(r.sup_ux) << ',' << num(r.sup_m) << ',' << num(r.min_mux) << ','
       << num(r.max_mux) << ',' << num(r.cum_int_mux) << ',' << num(r.cons.I0)
       << ',' << num(r.cons.I1) << ',' << num(r.cons.I2) << ','
       << num(r.cons.H0) << ',' << num(r.cons.H1) << '\n';
  }
}

void write_snapshot(const fs::path& path, const Snapshot& s) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  const Field ux = spectral_deriv(s.u, 1);
  os << "x,u,m,ux\n";
  for (int i = 0; i < s.u.size(); ++i)
    os << num(s.u.grid->node(i)) << ',' << num(s.u.v[i]) << ',' << num(s.m.v[i])
       << ',' << num(ux.v[i]) << '\n';
}

Field read_initial_file(std::shared_ptr<const Grid> grid, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("initial_file: cannot open " + path);
  std::vector<double> vals;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    std::stringstream ss(line);
    std::string xs, us;
    if (!std::getline(ss, xs, ',') || !std::getline(ss, us, ','))
      throw std::invalid_argument("initial_file: expected x,u rows");
    vals.push_back(std::stod(us));
  }
  if (static_cast<int>(vals.size()) != grid->size())
    throw std::invalid_argument("initial_file: row count does not match grid.n");
  return Field(std::move(grid), std::move(vals));
}

}  // namespace

int exit_code_for(Termination t) {
  switch (t) {
    case Termination::reached_t_end: return 0;
    case Termination::blowup_detected: return 2;
    case Termination::dt_underflow: return 3;
    case Termination::nonfinite: return 4;
  }
  return 1;
}

Field build_initial(const RunConfig& cfg) {
  auto grid = Grid::make(cfg.grid_L, cfg.grid_n);
  switch (cfg.initial) {
    case InitialKind::gaussian:
      return gaussian(grid, cfg.amplitude, cfg.width, cfg.center);
    case InitialKind::peakon: {
      PeakonSpec spec;
      spec.c = cfg.c;
      spec.epsilon = cfg.epsilon;
      return peakon(grid, spec, 0.0);
    }
    case InitialKind::two_peakon:
      return two_peakon(grid, cfg.c1, cfg.c2, 0.0);
    case InitialKind::bump_momentum:
      return bump_momentum(grid, cfg.amplitude, cfg.width, cfg.center);
    case InitialKind::file:
      return read_initial_file(grid, cfg.initial_file);
  }
  throw std::logic_error("build_initial: unhandled selector");
}

RunResult run(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);

  const Field u0 = build_initial(cfg);
  SimOptions opts;
  opts.store_every_step = cfg.every_step;
  opts.use_filter = cfg.filter;

  const Trajectory traj = simulate(u0, cfg.gamma, cfg.ctrl, cfg.snapshot_times, opts);

  write_timeseries(dir / "timeseries.csv", traj);
  int snap_idx = 0;
  json snap_index = json::array();
  for (const Snapshot& s : traj.snapshots) {
    // with every_step on, file output would explode; keep requested times only
    bool requested =
        std::abs(s.t) < 1e-14 || std::abs(s.t - cfg.ctrl.t_end) < 1e-12;
    for (double t : cfg.snapshot_times)
      if (std::abs(s.t - t) < 1e-12) requested = true;
    if (cfg.every_step && !requested) continue;
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%03d.csv", snap_idx++);
    write_snapshot(dir / name, s);
    snap_index.push_back({{"t", s.t}, {"file", name}});
  }

  json bounds;
  json diagnostics;

  if (cfg.diag_bounds) {
    const ExistenceBounds eb = existence_lower_bound(u0, cfg.gamma);
    json j;
    j["gamma"] = eb.gamma;
    j["sup_u0"] = eb.sup_u0;
    j["sup_ux0"] = eb.sup_ux0;
    j["sup_uxx0"] = eb.sup_uxx0;
    j["h0"] = eb.h0;
    j["T_lower"] = eb.T_lower;
    j["unbounded"] = eb.unbounded;
    if (!eb.unbounded) {
      // ratio over the records inside 90% of the guaranteed window
      Trajectory clipped = traj;
      clipped.records.clear();
      for (const StepRecord& r : traj.records)
        if (r.t <= 0.9 * eb.T_lower) clipped.records.push_back(r);
      if (!clipped.records.empty())
        j["sup_ratio_to_0.9T"] = m_sup_bound_check(clipped, eb);
    }
    bounds["existence"] = j;

    const Field m0 = m_from_u(u0);
    if (cfg.gamma == 0.0 && min_value(m0) >= -1e-10) {
      const double x0 = cfg.blowup_x0 ? *cfg.blowup_x0 : best_probe_point(u0);
      const BlowupBounds bb = blowup_upper_bound(u0, x0);
      json b;
      b["x0"] = bb.x0;
      b["I0"] = bb.I0;
      b["u0_h1"] = bb.u0_h1;
      b["m0_x0"] = bb.m0_x0;
      b["dxu0_x0"] = bb.dxu0_x0;
      b["C0"] = bb.C0;
      b["C1"] = bb.C1;
      b["C2"] = bb.C2;
      b["holds_i"] = bb.holds_i;
      b["holds_ii"] = bb.holds_ii;
      b["holds_iii"] = bb.holds_iii;
      b["case"] = to_string(bb.headline);
      if (bb.holds_i) b["t_star"] = bb.t_star;
      if (bb.holds_ii) b["t_star_star"] = bb.t_star_star;
      if (bb.holds_iii) b["t1"] = bb.t1;
      if (bb.headline != BlowupCase::none) b["bound"] = bb.bound;
      if (traj.termination == Termination::blowup_detected ||
          traj.termination == Termination::dt_underflow)
        b["detected_breaking_time"] = traj.final_time();
      bounds["blowup"] = b;
    }
  }

  if (cfg.diag_blowup_monitor) {
    const BlowupMonitor mon = blowup_monitor(traj);
    diagnostics["blowup_monitor"] = {
        {"min_M_final", mon.min_M.back()},
        {"cumulative_final", mon.cumulative.back()},
    };
    if (traj.termination == Termination::blowup_detected ||
        traj.termination == Termination::dt_underflow) {
      const BlowupRateProbe probe = blowup_rate_probe(traj, traj.final_time());
      diagnostics["blowup_rate_min_product"] = probe.min_product;
    }
  }

  if (cfg.diag_flow && traj.snapshots.size() >= 2) {
    std::vector<double> labels(cfg.flow_labels);
    const double span = 0.5 * cfg.grid_L;
    for (int j = 0; j < cfg.flow_labels; ++j)
      labels[j] = -span + 2.0 * span * (j + 0.5) / cfg.flow_labels;
    const FlowMap flow = evolve_flow(traj, labels);
    json f;
    f["min_qx"] = flow.min_qx();
    f["labels_monotone"] = flow.labels_monotone();
    if (cfg.gamma == 0.0)
      f["lagrangian_invariant_error"] = lagrangian_invariant_error(traj, flow);
    diagnostics["flow"] = f;
  }

  if (cfg.diag_persistence) {
    const WeightProfile w{cfg.persistence_theta, cfg.persistence_N};
    double worst_u = 0.0, worst_ux = 0.0;
    double init_u = 0.0, init_ux = 0.0;
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
      SolverState st;
      st.u = traj.snapshots[i].u;
      st.m = traj.snapshots[i].m;
      st.gamma = cfg.gamma;
      const auto [nu, nux] = persistence_norms(st, w);
      if (i == 0) {
        init_u = nu;
        init_ux = nux;
      }
      worst_u = std::max(worst_u, nu);
      worst_ux = std::max(worst_ux, nux);
    }
    json p;
    p["initial_weighted_u"] = init_u;
    p["initial_weighted_ux"] = init_ux;
    p["max_weighted_u"] = worst_u;
    p["max_weighted_ux"] = worst_ux;
    if (!traj.snapshots.empty())
      p["tail_exponent_final"] =
          fitted_tail_exponent(traj.snapshots.back().u, 5.0, 15.0);
    diagnostics["persistence"] = p;
  }

  if (cfg.diag_besov && !traj.snapshots.empty()) {
    const DyadicSpec spec = build_cutoffs(u0.grid);
    json arr = json::array();
    for (const Snapshot& s : traj.snapshots)
      arr.push_back({{"t", s.t},
                     {"norm", besov_norm(s.u, cfg.besov_s, cfg.besov_p,
                                         cfg.besov_r, spec)}});
    diagnostics["besov"] = {{"s", cfg.besov_s},
                            {"p", cfg.besov_p},
                            {"r", cfg.besov_r},
                            {"per_snapshot", arr}};
  }

  if (cfg.diag_stability) {
    const Field pert = gaussian(u0.grid, cfg.stability_perturb, 1.0, 0.0);
    const StabilityReport rep = stability_experiment(
        u0, u0 + pert, cfg.gamma, cfg.ctrl, cfg.ctrl.t_end);
    diagnostics["stability"] = {{"d0", rep.d0},
                                {"c_hat", rep.c_hat},
                                {"partial", rep.partial}};
  }

  if (cfg.diag_zero_curvature && !traj.snapshots.empty())
    diagnostics["zero_curvature"] = {
        {"lambda", cfg.zc_lambda},
        {"max_residual", zero_curvature_residual(traj, cfg.zc_lambda)}};

  if (cfg.diag_traveling_wave) {
    const TravelingWaveProbe probe = traveling_wave_residual(u0, cfg.tw_c);
    diagnostics["traveling_wave"] = {{"c", probe.c},
                                     {"max_residual_pde", probe.max_pde},
                                     {"max_residual_identity", probe.max_identity}};
  }

  if (!bounds.empty()) {
    std::ofstream os(dir / "bounds.json");
    os << bounds.dump(2) << '\n';
  }
  if (!diagnostics.empty()) {
    std::ofstream os(dir / "diagnostics.json");
    os << diagnostics.dump(2) << '\n';
  }

  RunResult res;
  res.termination = traj.termination;
  res.exit_code = exit_code_for(traj.termination);
  res.out_dir = dir.string();

  json manifest;
  json kv = json::object();
  for (const auto& [k, v] : cfg.to_key_values()) kv[k] = v;
  manifest["config"] = kv;
  manifest["termination"] = to_string(traj.termination);
  manifest["exit_code"] = res.exit_code;
  manifest["final_time"] = traj.final_time();
  manifest["steps"] = traj.records.size() - 1;
  manifest["m_max_stop_used"] = traj.m_max_stop_used;
  manifest["warnings"] = traj.warnings;
  manifest["snapshots"] = snap_index;
  manifest["version"] = "mch 0.1.0";
  {
    std::ofstream os(dir / "manifest.json");
    os << manifest.dump(2) << '\n';
  }
  return res;
}

std::vector<std::string> check_output_dir(const std::string& dir) {
  std::vector<std::string> problems;
  const fs::path p(dir);

  std::ifstream mf(p / "manifest.json");
  if (!mf) {
    problems.push_back("manifest.json missing");
    return problems;
  }
  json manifest;
  try {
    mf >> manifest;
  } catch (const std::exception& e) {
    problems.push_back(std::string("manifest.json unreadable: ") + e.what());
    return problems;
  }

  std::ifstream ts(p / "timeseries.csv");
  if (!ts) {
    problems.push_back("timeseries.csv missing");
    return problems;
  }
  std::string header;
  std::getline(ts, header);
  if (header != "t,dt,sup_u,sup_ux,sup_m,min_mux,max_mux,cum_int_mux,I0,I1,I2,H0,H1")
    problems.push_back("timeseries.csv: unexpected header");

  double prev_t = -1.0, prev_cum = -1.0;
  std::string line;
  int row = 1;
  while (std::getline(ts, line)) {
    ++row;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 13) {
      problems.push_back("timeseries.csv row " + std::to_string(row) + ": wrong arity");
      continue;
    }
    for (double v : vals)
      if (!std::isfinite(v)) {
        problems.push_back("timeseries.csv row " + std::to_string(row) + ": non-finite value");
        break;
      }
    if (vals[0] <= prev_t)
      problems.push_back("timeseries.csv row " + std::to_string(row) + ": time not increasing");
    if (vals[7] < prev_cum - 1e-14)
      problems.push_back("timeseries.csv row " + std::to_string(row) +
                         ": cumulative integral decreased");
    prev_t = vals[0];
    prev_cum = vals[7];
    const double i1 = vals[9], i2 = vals[10], h0 = vals[11], h1 = vals[12];
    if (std::abs(h0 - i1) > 1e-6 * (1.0 + std::abs(i1)))
      problems.push_back("timeseries.csv row " + std::to_string(row) + ": H0 != I1");
    if (std::abs(h1 - i2 / 4.0) > 1e-12 * (1.0 + std::abs(i2)))
      problems.push_back("timeseries.csv row " + std::to_string(row) + ": H1 != I2/4");
  }

  const std::string term = manifest.value("termination", "");
  const int code = manifest.value("exit_code", -1);
  if ((term == "reached_t_end") != (code == 0))
    problems.push_back("manifest: termination and exit_code disagree");
  return problems;
}

}  // namespace mch
