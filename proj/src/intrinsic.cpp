#include "heisvar/intrinsic.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace heisvar {

// --------------------------------------------------------------- curves

Curve2 IntrinsicFunction::curve(double eta0, double tau0, double t0, double t1,
                                int n, CurveMode mode) const {
  if (!(t1 > t0)) throw Error(errc::bad_input, "curve needs t1 > t0");
  if (n < 1) throw Error(errc::bad_input, "curve needs n >= 1");
  const bool exact =
      mode == CurveMode::ExactLeaf || (mode == CurveMode::Auto && exact_leaves());
  if (mode == CurveMode::ExactLeaf && !exact_leaves())
    throw Error(errc::bad_input,
                "exact leaf curves are unavailable for " + describe());
  return exact ? exact_curve(eta0, tau0, t0, t1, n)
               : rk4_curve(eta0, tau0, t0, t1, n);
}

Curve2 IntrinsicFunction::exact_curve(double, double, double, double,
                                      int) const {
  throw Error(errc::bad_input, "no exact curve mode for " + describe());
}

Curve2 IntrinsicFunction::rk4_curve(double eta0, double tau0, double t0,
                                    double t1, int n) const {
  // March from t = 0 (the base point) in each direction so the curve always
  // passes exactly through (eta0, tau0); assemble in ascending t.
  const double dt = (t1 - t0) / n;
  const int n_neg = static_cast<int>(std::lround(-t0 / dt));
  Curve2 c;
  c.t.resize(n + 1);
  c.eta.resize(n + 1);
  c.tau.resize(n + 1);
  for (int i = 0; i <= n; ++i) c.t[i] = t0 + dt * i;
  if (n_neg < 0 || n_neg > n || std::abs(c.t[n_neg]) > 1e-12 * (1.0 + std::abs(t1)))
    throw Error(errc::bad_input, "curve range must contain t = 0 on a step");

  auto step = [&](double& e, double& ta, double h) {
    const double k1 = f(e, ta);
    const double k2 = f(e + 0.5 * h, ta + 0.5 * h * k1);
    const double k3 = f(e + 0.5 * h, ta + 0.5 * h * k2);
    const double k4 = f(e + h, ta + h * k3);
    e += h;
    ta += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  };

  c.eta[n_neg] = eta0;
  c.tau[n_neg] = tau0;
  double e = eta0, ta = tau0;
  for (int i = n_neg; i < n; ++i) {
    try {
      step(e, ta, dt);
    } catch (const Error& err) {
      if (err.code != errc::out_of_window) throw;
      c.t.resize(i + 1), c.eta.resize(i + 1), c.tau.resize(i + 1);
      c.truncated = true;
      return c;
    }
    c.eta[i + 1] = e;
    c.tau[i + 1] = ta;
  }
  e = eta0, ta = tau0;
  for (int i = n_neg; i > 0; --i) {
    try {
      step(e, ta, -dt);
    } catch (const Error& err) {
      if (err.code != errc::out_of_window) throw;
      c.t.erase(c.t.begin(), c.t.begin() + i);
      c.eta.erase(c.eta.begin(), c.eta.begin() + i);
      c.tau.erase(c.tau.begin(), c.tau.begin() + i);
      c.truncated = true;
      return c;
    }
    c.eta[i - 1] = e;
    c.tau[i - 1] = ta;
  }
  return c;
}

// ---------------------------------------------------- foliation-backed

FoliationFunction::FoliationFunction(
    std::shared_ptr<const LagrangianProfile> p, double tol)
    : prof_(std::move(p)), tol_(tol) {
  if (!prof_) throw Error(errc::bad_input, "null profile");
  if (!(tol > 0.0)) throw Error(errc::bad_input, "tolerance must be > 0");
}

double FoliationFunction::zeta(double eta, double tau) const {
  return invert_foliation(*prof_, eta, tau, tol_);
}

FJet FoliationFunction::fjet(double eta, double tau) const {
  const double z = zeta(eta, tau);
  double a, b;
  prof_->AB(z, a, b);
  return {a * eta + b, a};
}

double FoliationFunction::leaf_spacing(double eta, double z) const {
  const double g = leaf_dzeta(*prof_, eta, z);
  if (!(g > 0.0)) {
    char msg[144];
    std::snprintf(msg, sizeof msg,
                  "degenerate foliation: d tau/d zeta = %g at eta=%g, zeta=%g",
                  g, eta, z);
    throw Error(errc::degenerate_foliation, msg);
  }
  return g;
}

double FoliationFunction::dtau_f(double eta, double tau) const {
  const double z = zeta(eta, tau);
  if (prof_->has_derivatives())
    return (prof_->dA(z) * eta + prof_->dB(z)) / leaf_spacing(eta, z);
  const double h =
      std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(tau));
  return (f(eta, tau + h) - f(eta, tau - h)) / (2.0 * h);
}

double FoliationFunction::dtau_psi(double eta, double tau) const {
  const double z = zeta(eta, tau);
  if (prof_->has_derivatives())
    return prof_->dA(z) / leaf_spacing(eta, z);
  const double h =
      std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(tau));
  return (psi(eta, tau + h) - psi(eta, tau - h)) / (2.0 * h);
}

Curve2 FoliationFunction::exact_curve(double eta0, double tau0, double t0,
                                      double t1, int n) const {
  const double z = zeta(eta0, tau0);
  Curve2 c;
  c.t.resize(n + 1);
  c.eta.resize(n + 1);
  c.tau.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = t0 + (t1 - t0) * i / n;
    c.t[i] = t;
    c.eta[i] = eta0 + t;
    c.tau[i] = leaf(*prof_, eta0 + t, z);
  }
  return c;
}

// -------------------------------------------------------- closed form

GridFunction::GridFunction(std::shared_ptr<const SmoothField> f,
                           std::string name)
    : f_(std::move(f)), name_(std::move(name)) {
  if (!f_) throw Error(errc::bad_input, "null field");
}

FJet GridFunction::fjet(double eta, double tau) const {
  const Jet2 j = f_->jet(eta, tau);
  return {j.v, j.de + j.v * j.dt};
}

double GridFunction::dtau_f(double eta, double tau) const {
  return f_->jet(eta, tau).dt;
}

double GridFunction::dtau_psi(double eta, double tau) const {
  const Jet2 j = f_->jet(eta, tau);
  return j.det + j.dt * j.dt + j.v * j.dtt;
}

}  // namespace heisvar
