// Shared small types and the error model.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace heisvar {

enum class errc {
  evaluation,            // non-finite value or a failed numeric evaluation
  out_of_window,         // foliation inversion left the certified window
  degenerate_foliation,  // leaf spacing d(tau)/d(zeta) <= 0 where needed
  degenerate_map,        // deformation or lift lost invertibility
  orientation,           // deformation Jacobian not positive
  bad_input,             // malformed arguments, config, or data files
};

class Error : public std::runtime_error {
 public:
  Error(errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  errc code;
};

struct Interval {
  double lo = 0.0, hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct Box {
  double eta0 = 0, eta1 = 0, tau0 = 0, tau1 = 0;
  double eta_len() const { return eta1 - eta0; }
  double tau_len() const { return tau1 - tau0; }
  bool contains(double eta, double tau) const {
    return eta0 <= eta && eta <= eta1 && tau0 <= tau && tau <= tau1;
  }
  bool contains(const Box& o) const {
    return eta0 <= o.eta0 && o.eta1 <= eta1 && tau0 <= o.tau0 && o.tau1 <= tau1;
  }
};

// Planar curve sampled along its parameter; truncated = true when an
// integration stopped early (leaf label left the certified window).
struct Curve2 {
  std::vector<double> t, eta, tau;
  bool truncated = false;
};

// Sampled space curve (group coordinates).
struct Curve3 {
  std::vector<double> t, x, y, z;
  bool truncated = false;
};

}  // namespace heisvar
