#pragma once

#include <string>
#include <vector>

#include "heisvar/types.hpp"

namespace heisvar {

// Per-field results of the variation experiment.
struct FieldReport {
  int index = 0;
  double first_analytic = 0.0;   // first variation, analytic integrand
  double first_fd = 0.0;         // d/d(eps) of deformed area, Richardson FD
  double first_fd_err = 0.0;     // FD level-disagreement estimate
  double second_analytic = 0.0;  // second variation, analytic integrand
  double second_fd = 0.0;
  double second_fd_err = 0.0;
  bool has_lagrangian = false;   // leaf-form available (needs d(psi)/d(tau))
  double lagr_graph = 0.0;       // graph-term of the leaf-form
  double lagr_leaf = 0.0;        // leaf-term of the leaf-form
  bool first_ok = false;
  bool second_ok = false;
  bool match_first_ok = false;   // analytic vs FD agreement, first order
  bool match_second_ok = false;  // analytic vs FD agreement, second order
  bool lagr_ok = true;           // two second-variation forms agree
};

struct VariationReport {
  std::string profile;
  Box box{0, 1, 0, 1};
  int cells = 0;
  int order = 0;
  unsigned long long seed = 0;
  bool aligned = true;
  double fd_h = 0.0;
  double area = 0.0;
  bool has_pde = false;
  double pde_residual = 0.0;
  double tol_critical = 0.0;
  double tol_first = 0.0;
  double tol_second = 0.0;
  double tol_lagrangian = 0.0;
  std::vector<FieldReport> fields;
  bool all_ok = false;
};

struct AreaLevel {
  int cells = 0;
  double value = 0.0;
};

struct AreaReport {
  std::string profile;
  Box box{0, 1, 0, 1};
  int order = 0;
  std::vector<AreaLevel> levels;
  bool has_rate = false;
  double rate = 0.0;  // observed convergence rate between the last 3 levels
};

// Serialized forms are byte-deterministic for identical inputs: no
// timestamps, no environment data, fixed key order, round-trip number
// formatting.
std::string variation_to_json(const VariationReport& r);
std::string variation_to_csv(const VariationReport& r);
std::string area_to_json(const AreaReport& r);
std::string area_to_csv(const AreaReport& r);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace heisvar
