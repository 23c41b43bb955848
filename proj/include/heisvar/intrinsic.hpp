// Graph functions on the plane together with the derived quantities the
// variational integrands need: the intrinsic gradient psi, its tau
// derivative, and integral curves of  d eta/dt = 1, d tau/dt = f.
#pragma once

#include <memory>
#include <string>

#include "heisvar/fields.hpp"
#include "heisvar/profile.hpp"

namespace heisvar {

struct FJet {
  double f = 0, psi = 0;
};

enum class CurveMode { Auto, ExactLeaf, Integrate };

class IntrinsicFunction {
 public:
  virtual ~IntrinsicFunction() = default;
  // f and psi at a point, resolved together.
  virtual FJet fjet(double eta, double tau) const = 0;
  double f(double eta, double tau) const { return fjet(eta, tau).f; }
  double psi(double eta, double tau) const { return fjet(eta, tau).psi; }
  virtual double dtau_f(double eta, double tau) const = 0;
  virtual double dtau_psi(double eta, double tau) const = 0;
  virtual bool exact_leaves() const = 0;
  virtual std::string describe() const = 0;
  // Integral curve through (eta0, tau0) sampled at n+1 uniform parameters
  // on [t0, t1] (t = 0 at the base point).  Auto picks the exact leaf when
  // one is available, otherwise classical 4-stage integration.
  Curve2 curve(double eta0, double tau0, double t0, double t1, int n,
               CurveMode mode = CurveMode::Auto) const;

 protected:
  virtual Curve2 exact_curve(double eta0, double tau0, double t0, double t1,
                             int n) const;
  Curve2 rk4_curve(double eta0, double tau0, double t0, double t1,
                   int n) const;
};

// Graph function carried by an admissible Lagrangian profile: each point
// resolves to its leaf label zeta, then f = A(zeta) eta + B(zeta) and
// psi = A(zeta).
class FoliationFunction : public IntrinsicFunction {
 public:
  explicit FoliationFunction(std::shared_ptr<const LagrangianProfile> p,
                             double tol = 1e-12);
  double zeta(double eta, double tau) const;
  FJet fjet(double eta, double tau) const override;
  double dtau_f(double eta, double tau) const override;
  double dtau_psi(double eta, double tau) const override;
  bool exact_leaves() const override { return true; }
  std::string describe() const override { return prof_->describe(); }
  const LagrangianProfile& profile() const { return *prof_; }
  double tol() const { return tol_; }

 protected:
  Curve2 exact_curve(double eta0, double tau0, double t0, double t1,
                     int n) const override;

 private:
  // d tau / d zeta across leaves at fixed eta; throws when <= 0.
  double leaf_spacing(double eta, double z) const;
  std::shared_ptr<const LagrangianProfile> prof_;
  double tol_;
};

// Closed-form graph function (no foliation behind it); psi and its
// derivatives come from the field's own jets.  Used for non-critical
// controls.
class GridFunction : public IntrinsicFunction {
 public:
  explicit GridFunction(std::shared_ptr<const SmoothField> f,
                        std::string name = "grid");
  FJet fjet(double eta, double tau) const override;
  double dtau_f(double eta, double tau) const override;
  double dtau_psi(double eta, double tau) const override;
  bool exact_leaves() const override { return false; }
  std::string describe() const override { return name_; }

 private:
  std::shared_ptr<const SmoothField> f_;
  std::string name_;
};

}  // namespace heisvar
