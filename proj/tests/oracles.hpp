// Reference implementations used only by the tests.  Everything here is
// written straight from closed-form expressions or textbook numerical
// recipes and is kept independent of the library code paths it checks.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------- summation

// Deterministic pairwise reduction in index order.
inline double pairwise(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::size_t n = v.size();
  while (n > 1) {
    std::size_t m = n / 2;
    for (std::size_t i = 0; i < m; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2) {
      v[m] = v[n - 1];
      ++m;
    }
    n = m;
  }
  return v[0];
}

// ------------------------------------------------------- composite midpoint

inline double midpoint2d(const std::function<double(double, double)>& g,
                         double x0, double x1, double y0, double y1, int nx,
                         int ny) {
  const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int i = 0; i < nx; ++i) {
    const double x = x0 + (i + 0.5) * hx;
    for (int j = 0; j < ny; ++j) {
      const double y = y0 + (j + 0.5) * hy;
      terms.push_back(g(x, y) * hx * hy);
    }
  }
  return pairwise(std::move(terms));
}

// ----------------------------------------------- cubic foliation, h(s) = s^3
// Leaves are labelled zeta = s^3; the graph function and its derived
// quantities have closed forms through s(eta, tau) = eta + cbrt(tau - eta^3).

inline double cubic_s(double eta, double tau) {
  return eta + std::cbrt(tau - eta * eta * eta);
}
inline double cubic_f(double eta, double tau) {
  const double c = std::cbrt(tau - eta * eta * eta);
  return 3.0 * eta * eta - 3.0 * c * c;
}
inline double cubic_psi(double eta, double tau) {
  return 6.0 * cubic_s(eta, tau);
}
inline double cubic_dtau_psi(double eta, double tau) {
  const double c = std::cbrt(tau - eta * eta * eta);
  return 2.0 / (c * c);
}
inline double cubic_dtau_f(double eta, double tau) {
  return -2.0 / std::cbrt(tau - eta * eta * eta);
}
inline double cubic_A(double z) { return 6.0 * std::cbrt(z); }
inline double cubic_B(double z) {
  const double c = std::cbrt(z);
  return -3.0 * c * c;
}

// --------------------------------------------- ramp profile A = c z, B = 0

inline double ramp_zeta(double c, double eta, double tau) {
  return tau / (1.0 + 0.5 * c * eta * eta);
}
inline double ramp_f(double c, double eta, double tau) {
  return c * eta * ramp_zeta(c, eta, tau);
}
inline double ramp_psi(double c, double eta, double tau) {
  return c * ramp_zeta(c, eta, tau);
}
inline double ramp_dtau_psi(double c, double eta, double /*tau*/) {
  return c / (1.0 + 0.5 * c * eta * eta);
}
inline double ramp_dtau_f(double c, double eta, double /*tau*/) {
  return c * eta / (1.0 + 0.5 * c * eta * eta);
}

// -------------------------------------------- plane profile A = a, B = 0

inline double plane_f(double a, double eta, double /*tau*/) { return a * eta; }

// ------------------------------- central differences, one Richardson level
// Samples: g at -h, -h/2, 0, +h/2, +h.

struct Fd {
  double first = 0, second = 0, err_first = 0, err_second = 0;
};

inline Fd richardson5(double gm1, double gm05, double g0, double gp05,
                      double gp1, double h) {
  const double d1h = (gp1 - gm1) / (2.0 * h);
  const double d1h2 = (gp05 - gm05) / h;
  const double d2h = (gp1 - 2.0 * g0 + gm1) / (h * h);
  const double d2h2 = (gp05 - 2.0 * g0 + gm05) / (0.25 * h * h);
  Fd r;
  r.first = (4.0 * d1h2 - d1h) / 3.0;
  r.err_first = std::abs(r.first - d1h2);
  r.second = (4.0 * d2h2 - d2h) / 3.0;
  r.err_second = std::abs(r.second - d2h2);
  return r;
}

// Convenience: differentiate a callable at x = 0 with base step h.
inline Fd richardson5(const std::function<double(double)>& g, double h) {
  return richardson5(g(-h), g(-0.5 * h), g(0.0), g(0.5 * h), g(h), h);
}

}  // namespace oracle
