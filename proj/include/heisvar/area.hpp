// Sub-Riemannian graph area and the per-node cache used by the variation
// integrals.
#pragma once

#include "heisvar/intrinsic.hpp"
#include "heisvar/quadrature.hpp"

namespace heisvar {

// integral of sqrt(1 + psi^2) over the box.
double intrinsic_area(const IntrinsicFunction& F, const QuadratureDomain& D);

// Graph data resolved once per quadrature node; every variation integral
// over the same (F, D) pair can reuse it.
struct ResolvedDomain {
  const QuadratureDomain* dom = nullptr;
  std::vector<FJet> fj;
  std::vector<double> dtau_psi;  // filled only on request
};

ResolvedDomain resolve_domain(const IntrinsicFunction& F,
                              const QuadratureDomain& D,
                              bool with_dtau_psi = false);

double intrinsic_area(const ResolvedDomain& R);

}  // namespace heisvar
