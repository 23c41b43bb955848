// Contact variations of the graph area.  The deformation family
//   phi^eps = Id + eps V + (eps^2/2) W
// acts on the plane; the deformed graph's area gamma(eps), its first and
// second eps-derivatives, and the closed quadratic forms at eps = 0 are
// all integrated over a common quadrature domain without ever inverting
// phi (everything is composed with phi and weighted by its Jacobian).
#pragma once

#include <utility>
#include <vector>

#include "heisvar/area.hpp"

namespace heisvar {

struct DiffeoFamily {
  TestField field;
};

// Jets of phi1, phi2 and their first/second eps-derivatives at a point.
struct PhiJets {
  Jet2 p1, p2, d1, d2, dd1, dd2;
};
PhiJets phi_jets(const DiffeoFamily& fam, double eps, double eta, double tau);

// The planar map phi^eps at a fixed parameter value, exposing component
// jets (this is what the contact lift consumes).
class FamilyMap {
 public:
  FamilyMap(const DiffeoFamily& fam, double eps) : fam_(&fam), eps_(eps) {}
  Jet2 jet1(double eta, double tau) const;
  Jet2 jet2(double eta, double tau) const;
  double eps() const { return eps_; }

 private:
  const DiffeoFamily* fam_;
  double eps_;
};

// Transported graph function along phi^eps, composed back with phi:
// value = (f_eps o phi), grad = (intrinsic gradient of f_eps) o phi.
struct Pushforward {
  double value = 0, grad = 0;
};
Pushforward pushforward(const IntrinsicFunction& F, const DiffeoFamily& fam,
                        double eps, double eta, double tau);

// First and second eps-derivatives of Pushforward.grad at a fixed planar
// point (the coefficient functions of the variation integrands).
double pushforward_grad_rate(const IntrinsicFunction& F,
                             const DiffeoFamily& fam, double eps, double eta,
                             double tau);
double pushforward_grad_rate2(const IntrinsicFunction& F,
                              const DiffeoFamily& fam, double eps, double eta,
                              double tau);

// Area of the deformed graph and its analytic eps-derivatives.
double deformed_area(const IntrinsicFunction& F, const DiffeoFamily& fam,
                     double eps, const QuadratureDomain& D);
double deformed_area_rate(const IntrinsicFunction& F, const DiffeoFamily& fam,
                          double eps, const QuadratureDomain& D);
double deformed_area_rate2(const IntrinsicFunction& F,
                           const DiffeoFamily& fam, double eps,
                           const QuadratureDomain& D);
// Batch variants over a resolved domain (graph data cached per node).
double deformed_area(const DiffeoFamily& fam, double eps,
                     const ResolvedDomain& R);
double deformed_area_rate(const DiffeoFamily& fam, double eps,
                          const ResolvedDomain& R);
double deformed_area_rate2(const DiffeoFamily& fam, double eps,
                           const ResolvedDomain& R);

// Closed first-variation display at eps = 0 (equals the rate at 0, but
// assembled independently from V alone).
double first_variation(const IntrinsicFunction& F, const DiffeoFamily& fam,
                       const QuadratureDomain& D);
double first_variation(const DiffeoFamily& fam, const ResolvedDomain& R);

// Quadratic form of the second variation at eps = 0.  W drops out of this
// form by construction; at critical graph functions it equals the full
// second derivative of the deformed area.
double second_variation(const IntrinsicFunction& F, const DiffeoFamily& fam,
                        const QuadratureDomain& D);
double second_variation(const DiffeoFamily& fam, const ResolvedDomain& R);

// Same form rewritten in Lagrangian (leaf-adapted) terms: a square against
// the graph block plus the leaf-spacing rate against a transported square.
// Both pieces are nonnegative when d(psi)/d(tau) >= 0.
struct LagrangianSecond {
  double graph_term = 0, leaf_term = 0;
  double total() const { return graph_term + leaf_term; }
};
LagrangianSecond second_variation_lagrangian(const IntrinsicFunction& F,
                                             const DiffeoFamily& fam,
                                             const QuadratureDomain& D);
LagrangianSecond second_variation_lagrangian(const DiffeoFamily& fam,
                                             const ResolvedDomain& R);

// Sup over quadrature nodes of |u'' + 2 (d_tau f) u'| where u is the
// normalized gradient psi/sqrt(1+psi^2) sampled along the integral curve
// through the node (5-point stencil with spacing h).
double minimal_pde_residual(const IntrinsicFunction& F,
                            const QuadratureDomain& D, double h = 1e-2,
                            int rk_steps = 32);

// Central differences with one Richardson level from samples
// {(0, g0), (±h/2, ·), (±h, ·)}; err_* is the level disagreement.
struct FdDerivatives {
  double first = 0, second = 0, err_first = 0, err_second = 0;
};
FdDerivatives fd_derivatives(
    const std::vector<std::pair<double, double>>& samples);

}  // namespace heisvar
