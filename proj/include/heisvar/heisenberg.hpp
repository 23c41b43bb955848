// Group-level geometry: lifts of graph functions and planar curves into
// the group, horizontality diagnostics, and the contact lift of planar
// maps in polarized (second-kind) coordinates.
#pragma once

#include <functional>
#include <vector>

#include "heisvar/intrinsic.hpp"
#include "heisvar/variation.hpp"

namespace heisvar {

// FirstKind: exponential coordinates, group law with the +-1/2 cross term.
// SecondKind: polarized coordinates (xi, eta, tau) adapted to graph maps.
// Points in different charts are never mixed silently.
enum class Chart { FirstKind, SecondKind };

struct HPoint {
  double x = 0, y = 0, z = 0;
  Chart chart = Chart::FirstKind;
};

HPoint group_multiply(const HPoint& a, const HPoint& b);  // FirstKind only
HPoint group_inverse(const HPoint& a);

// Graph point (f, eta, tau - eta f / 2) in FirstKind coordinates.
HPoint lift_graph(const IntrinsicFunction& F, double eta, double tau);
// Inverse of the graph parametrization: planar coordinates of a point.
void project_graph(const HPoint& p, double& eta, double& tau);
Curve3 lift_curve(const IntrinsicFunction& F, const Curve2& c);

// max over interior samples of |z' + (y x' - x y') / 2| (central
// differences in the curve parameter); zero for horizontal curves.
double horizontality_defect(const Curve3& c);

// Contact lift of the planar map at q = (xi, eta, tau) in SecondKind
// coordinates:  Phi(q) = (Dxi phi2 / Dxi phi1, phi1, phi2) with
// Dxi = d_eta + xi d_tau applied to the planar components at (eta, tau).
HPoint contact_lift(const FamilyMap& m, const HPoint& q);

struct ContactReport {
  // max |Z-component| of the pushforwards of the two horizontal frame
  // fields (the contact defect; ~0 for contact maps)
  double frame_defect = 0;
  // how far dPhi(X) is from being parallel to X (its Y-component)
  double parallel_defect = 0;
};
// Finite-difference contact diagnostic of an arbitrary SecondKind map at
// the given sample points; step h * (1 + |p|) per point.
ContactReport contact_defect(const std::function<HPoint(const HPoint&)>& Phi,
                             const std::vector<HPoint>& samples,
                             double h = 1e-5);

}  // namespace heisvar
