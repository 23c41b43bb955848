#include "heisvar/area.hpp"

#include <cmath>
#include <cstdio>

namespace heisvar {

double intrinsic_area(const IntrinsicFunction& F, const QuadratureDomain& D) {
  return D.integrate([&](const QNode& q) {
    const FJet j = F.fjet(q.eta, q.tau);
    return std::sqrt(1.0 + j.psi * j.psi);
  });
}

ResolvedDomain resolve_domain(const IntrinsicFunction& F,
                              const QuadratureDomain& D, bool with_dtau_psi) {
  ResolvedDomain r;
  r.dom = &D;
  const auto& nodes = D.nodes();
  r.fj.resize(nodes.size());
  if (with_dtau_psi) r.dtau_psi.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    try {
      r.fj[i] = F.fjet(nodes[i].eta, nodes[i].tau);
      if (with_dtau_psi)
        r.dtau_psi[i] = F.dtau_psi(nodes[i].eta, nodes[i].tau);
    } catch (Error& e) {
      char loc[96];
      std::snprintf(loc, sizeof loc, " (at node eta=%.12g, tau=%.12g)",
                    nodes[i].eta, nodes[i].tau);
      throw Error(e.code, std::string(e.what()) + loc);
    }
  }
  return r;
}

double intrinsic_area(const ResolvedDomain& R) {
  const auto& nodes = R.dom->nodes();
  std::vector<double> terms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    terms[i] = nodes[i].w * std::sqrt(1.0 + R.fj[i].psi * R.fj[i].psi);
  return pairwise_sum(std::move(terms));
}

}  // namespace heisvar
