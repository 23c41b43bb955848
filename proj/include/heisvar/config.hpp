#pragma once

#include <string>
#include <vector>

#include "heisvar/types.hpp"

namespace heisvar {

// Experiment configuration, read from a small INI-style file.  Unknown
// sections or keys are rejected so that typos fail loudly instead of
// silently running with defaults.
struct ExperimentConfig {
  // [profile]
  std::string profile_name = "cubic";   // registry name, e.g. "ramp(1)"
  std::string profile_csv;              // if nonempty, load sampled profile
  Interval profile_window{0.0, 0.0};    // {0,0} means "use the default"
  double mollify_eps = 0.0;             // 0 disables mollification
  int mollify_quad = 64;

  // [domain]
  Box box{0.5, 1.0, 2.0, 3.0};
  int cells = 64;
  int order = 4;

  // [fields]
  int field_count = 10;
  unsigned long long seed = 1;
  bool align_supports = true;
  bool with_w = false;

  // [variation]
  // Outer step of the {0, +-h/2, +-h} Richardson schedule.  5e-3 keeps the
  // truncation error of the second derivative well inside tol_second for
  // bump fields while staying far above the quadrature-noise floor.
  double fd_h = 5e-3;
  double tol_first = 1e-5;              // analytic vs FD, first derivative
  double tol_second = 1e-4;             // analytic vs FD, second derivative
  double tol_lagrangian = 1e-6;         // two second-variation forms
  double tol_critical = 1e-6;           // |first variation| <= tol * area
  bool run_pde = true;
  double pde_h = 1e-2;
  int pde_steps = 32;

  // [check]
  int check_samples = 200;
  double check_tol = 1e-9;
  double threshold_hi = 0.0;
  double threshold_lo = 0.0;

  // [area]
  int area_levels = 4;                  // refinement levels, cells doubling

  // [lift]
  int lift_leaves = 5;
  int lift_samples = 65;
  Interval lift_trange{-1.0, 1.0};
  bool lift_mesh = false;
  double lift_eps = 0.05;
  double contact_h = 1e-5;
  int contact_grid = 5;

  // [output]
  std::string out_dir = ".";
};

// Parse `path`; throws Error(errc::bad_input) on syntax errors, unknown
// sections/keys, or malformed values.
ExperimentConfig load_config(const std::string& path);

// Parse config text directly (used by tests).
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

}  // namespace heisvar
