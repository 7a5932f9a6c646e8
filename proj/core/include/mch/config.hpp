#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mch/timestep.hpp"

namespace mch {

enum class InitialKind { gaussian, peakon, two_peakon, bump_momentum, file };

// A fully resolved run description. Every field has a default; parse_config
// fills the rest from a flat key = value document with dotted keys.
struct RunConfig {
  double grid_L = 20.0 * M_PI;
  int grid_n = 1024;
  double gamma = 0.0;
  StepControl ctrl;

  InitialKind initial = InitialKind::gaussian;
  double amplitude = 0.5;
  double width = 1.0;
  double center = 0.0;
  double c = 1.0;             // peakon speed
  double epsilon = 0.0;       // peakon mollification width
  double c1 = 0.5, c2 = 1.0;  // two-peakon speeds
  std::string initial_file;

  bool filter = false;        // exponential filter in the stepper

  std::string out_dir = "out";
  std::vector<double> snapshot_times;
  bool every_step = false;

  bool diag_conserved = true;
  bool diag_blowup_monitor = false;
  bool diag_bounds = false;
  std::optional<double> blowup_x0;  // probe point; default: best margin

  bool diag_flow = false;
  int flow_labels = 33;

  bool diag_persistence = false;
  double persistence_theta = 0.5;
  double persistence_N = 30.0;

  bool diag_besov = false;
  double besov_s = 1.5, besov_p = 2.0, besov_r = 1.0;
  bool diag_stability = false;
  double stability_perturb = 1e-6;

  bool diag_zero_curvature = false;
  double zc_lambda = 1.0;

  bool diag_traveling_wave = false;
  double tw_c = 1.0;

  std::string preset_name;  // echo only

  // Sorted key = value echo of every setting; the manifest's config record.
  std::vector<std::pair<std::string, std::string>> to_key_values() const;
};

// Parse a flat key = value document ('#' comments, blank lines ignored) on
// top of base. Unknown keys, type mismatches and inconsistent values raise
// std::invalid_argument naming the key.
RunConfig parse_config(const std::string& text, RunConfig base = {});

// Apply one "key=value" override.
void apply_override(RunConfig& cfg, const std::string& assignment);

// Named preset catalog; throws on unknown name.
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace mch
