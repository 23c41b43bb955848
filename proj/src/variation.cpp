#include "heisvar/variation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace heisvar {

namespace {
constexpr double kDenominatorFloor = 1e-6;

Jet2 id_eta(double eta) { return {eta, 1, 0, 0, 0, 0}; }
Jet2 id_tau(double tau) { return {tau, 0, 1, 0, 0, 0}; }
}  // namespace

PhiJets phi_jets(const DiffeoFamily& fam, double eps, double eta,
                 double tau) {
  const TestField& f = fam.field;
  if (!f.V1 || !f.V2)
    throw Error(errc::bad_input, "deformation field must have V1 and V2");
  const Jet2 v1 = f.V1->jet(eta, tau), v2 = f.V2->jet(eta, tau);
  const Jet2 w1 = f.W1 ? f.W1->jet(eta, tau) : Jet2{};
  const Jet2 w2 = f.W2 ? f.W2->jet(eta, tau) : Jet2{};
  PhiJets j;
  j.p1 = id_eta(eta) + eps * v1 + (0.5 * eps * eps) * w1;
  j.p2 = id_tau(tau) + eps * v2 + (0.5 * eps * eps) * w2;
  j.d1 = v1 + eps * w1;
  j.d2 = v2 + eps * w2;
  j.dd1 = w1;
  j.dd2 = w2;
  return j;
}

Jet2 FamilyMap::jet1(double eta, double tau) const {
  return phi_jets(*fam_, eps_, eta, tau).p1;
}
Jet2 FamilyMap::jet2(double eta, double tau) const {
  return phi_jets(*fam_, eps_, eta, tau).p2;
}

namespace {

// Everything the integrands need at one node and one eps.
struct EpsTerms {
  double Np1, Np2, Dp1, Dp2;      // intrinsic gradient / operator of phi
  double Nd1, Nd2, Dd1, Dd2;      // ... of d(phi)/d(eps)
  double Ndd1, Ndd2, Ddd1, Ddd2;  // ... of d2(phi)/d(eps)2
  double J, dJ, ddJ;              // Jacobian and eps-derivatives
};

inline double ngrad(const Jet2& j, double f) { return j.de + f * j.dt; }
inline double dop(const Jet2& j, double f, double psi) {
  return j.dee + 2.0 * f * j.det + f * f * j.dtt + psi * j.dt;
}

EpsTerms eps_terms(const PhiJets& pj, const FJet& fj) {
  const double f = fj.f, psi = fj.psi;
  EpsTerms s;
  s.Np1 = ngrad(pj.p1, f);
  s.Np2 = ngrad(pj.p2, f);
  s.Dp1 = dop(pj.p1, f, psi);
  s.Dp2 = dop(pj.p2, f, psi);
  s.Nd1 = ngrad(pj.d1, f);
  s.Nd2 = ngrad(pj.d2, f);
  s.Dd1 = dop(pj.d1, f, psi);
  s.Dd2 = dop(pj.d2, f, psi);
  s.Ndd1 = ngrad(pj.dd1, f);
  s.Ndd2 = ngrad(pj.dd2, f);
  s.Ddd1 = dop(pj.dd1, f, psi);
  s.Ddd2 = dop(pj.dd2, f, psi);
  s.J = pj.p1.de * pj.p2.dt - pj.p1.dt * pj.p2.de;
  s.dJ = pj.d1.de * pj.p2.dt + pj.p1.de * pj.d2.dt - pj.d1.dt * pj.p2.de -
         pj.p1.dt * pj.d2.de;
  s.ddJ = pj.dd1.de * pj.p2.dt + 2.0 * pj.d1.de * pj.d2.dt +
          pj.p1.de * pj.dd2.dt -
          (pj.dd1.dt * pj.p2.de + 2.0 * pj.d1.dt * pj.d2.de +
           pj.p1.dt * pj.dd2.de);
  return s;
}

void check_denominator(double Np1, double eta, double tau) {
  if (!(std::abs(Np1) > kDenominatorFloor)) {
    char msg[144];
    std::snprintf(msg, sizeof msg,
                  "deformation lost transversality: intrinsic gradient of "
                  "phi1 = %g at eta=%g, tau=%g",
                  Np1, eta, tau);
    throw Error(errc::degenerate_map, msg);
  }
}

// (intrinsic gradient of the transported graph function) o phi
inline double ghat(const EpsTerms& s) {
  const double n = s.Np1;
  return s.Dp2 / (n * n) - s.Np2 * s.Dp1 / (n * n * n);
}

// first eps-derivative of ghat at fixed planar point
inline double grad_rate_terms(const EpsTerms& s) {
  const double n = s.Np1, n2 = n * n, n3 = n2 * n, n4 = n3 * n;
  return s.Dd2 / n2 - 2.0 * s.Dp2 * s.Nd1 / n3 - s.Nd2 * s.Dp1 / n3 +
         3.0 * s.Np2 * s.Nd1 * s.Dp1 / n4 - s.Np2 * s.Dd1 / n3;
}

// second eps-derivative of ghat at fixed planar point
inline double grad_rate2_terms(const EpsTerms& s) {
  const double n = s.Np1, n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n;
  return s.Ddd2 / n2 - 4.0 * s.Dd2 * s.Nd1 / n3 - 2.0 * s.Dp2 * s.Ndd1 / n3 +
         6.0 * s.Dp2 * s.Nd1 * s.Nd1 / n4 - s.Ndd2 * s.Dp1 / n3 -
         2.0 * s.Nd2 * s.Dd1 / n3 + 6.0 * s.Nd2 * s.Dp1 * s.Nd1 / n4 +
         3.0 * s.Np2 * s.Ndd1 * s.Dp1 / n4 + 6.0 * s.Np2 * s.Nd1 * s.Dd1 / n4 -
         12.0 * s.Np2 * s.Nd1 * s.Nd1 * s.Dp1 / n5 - s.Np2 * s.Ddd1 / n3;
}

void check_support(const TestField& f, const QuadratureDomain& D) {
  if (!D.box().contains(f.support))
    throw Error(errc::bad_input,
                "deformation support box must lie inside the quadrature box");
}

void check_orientation(double J, double eta, double tau) {
  if (!(J > 0.0)) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "deformation Jacobian %g not positive at eta=%g, tau=%g", J,
                  eta, tau);
    throw Error(errc::orientation, msg);
  }
}

// Shared driver: integrate a node expression that only depends on the
// cached graph data and the deformation jets.
template <class Fn>
double integrate_nodes(const DiffeoFamily& fam, const ResolvedDomain& R,
                       Fn&& fn) {
  check_support(fam.field, *R.dom);
  const auto& nodes = R.dom->nodes();
  std::vector<double> terms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    terms[i] = nodes[i].w * fn(i, nodes[i]);
  return pairwise_sum(std::move(terms));
}

inline bool in_support(const TestField& f, const QNode& q) {
  return f.support.contains(q.eta, q.tau);
}

}  // namespace

Pushforward pushforward(const IntrinsicFunction& F, const DiffeoFamily& fam,
                        double eps, double eta, double tau) {
  const PhiJets pj = phi_jets(fam, eps, eta, tau);
  const EpsTerms s = eps_terms(pj, F.fjet(eta, tau));
  check_denominator(s.Np1, eta, tau);
  return {s.Np2 / s.Np1, ghat(s)};
}

double pushforward_grad_rate(const IntrinsicFunction& F,
                             const DiffeoFamily& fam, double eps, double eta,
                             double tau) {
  const EpsTerms s =
      eps_terms(phi_jets(fam, eps, eta, tau), F.fjet(eta, tau));
  check_denominator(s.Np1, eta, tau);
  return grad_rate_terms(s);
}

double pushforward_grad_rate2(const IntrinsicFunction& F,
                              const DiffeoFamily& fam, double eps, double eta,
                              double tau) {
  const EpsTerms s =
      eps_terms(phi_jets(fam, eps, eta, tau), F.fjet(eta, tau));
  check_denominator(s.Np1, eta, tau);
  return grad_rate2_terms(s);
}

// ------------------------------------------------------ area integrals

double deformed_area(const DiffeoFamily& fam, double eps,
                     const ResolvedDomain& R) {
  return integrate_nodes(fam, R, [&](std::size_t i, const QNode& q) {
    const FJet& fj = R.fj[i];
    if (!in_support(fam.field, q))
      return std::sqrt(1.0 + fj.psi * fj.psi);  // phi = Id here
    const EpsTerms s = eps_terms(phi_jets(fam, eps, q.eta, q.tau), fj);
    check_denominator(s.Np1, q.eta, q.tau);
    check_orientation(s.J, q.eta, q.tau);
    const double g = ghat(s);
    return std::sqrt(1.0 + g * g) * s.J;
  });
}

double deformed_area_rate(const DiffeoFamily& fam, double eps,
                          const ResolvedDomain& R) {
  return integrate_nodes(fam, R, [&](std::size_t i, const QNode& q) {
    if (!in_support(fam.field, q)) return 0.0;
    const EpsTerms s = eps_terms(phi_jets(fam, eps, q.eta, q.tau), R.fj[i]);
    check_denominator(s.Np1, q.eta, q.tau);
    const double g = ghat(s);
    const double root = std::sqrt(1.0 + g * g);
    return g / root * grad_rate_terms(s) * s.J + root * s.dJ;
  });
}

double deformed_area_rate2(const DiffeoFamily& fam, double eps,
                           const ResolvedDomain& R) {
  return integrate_nodes(fam, R, [&](std::size_t i, const QNode& q) {
    if (!in_support(fam.field, q)) return 0.0;
    const EpsTerms s = eps_terms(phi_jets(fam, eps, q.eta, q.tau), R.fj[i]);
    check_denominator(s.Np1, q.eta, q.tau);
    const double g = ghat(s);
    const double one = 1.0 + g * g;
    const double root = std::sqrt(one);
    const double a = grad_rate_terms(s), b = grad_rate2_terms(s);
    return a * a / (one * root) * s.J + g / root * b * s.J +
           2.0 * g / root * a * s.dJ + root * s.ddJ;
  });
}

double deformed_area(const IntrinsicFunction& F, const DiffeoFamily& fam,
                     double eps, const QuadratureDomain& D) {
  return deformed_area(fam, eps, resolve_domain(F, D));
}
double deformed_area_rate(const IntrinsicFunction& F, const DiffeoFamily& fam,
                          double eps, const QuadratureDomain& D) {
  return deformed_area_rate(fam, eps, resolve_domain(F, D));
}
double deformed_area_rate2(const IntrinsicFunction& F,
                           const DiffeoFamily& fam, double eps,
                           const QuadratureDomain& D) {
  return deformed_area_rate2(fam, eps, resolve_domain(F, D));
}

// --------------------------------------------- closed forms at eps = 0

namespace {
struct Vjets {
  Jet2 v1, v2;
  double NV1, NV2, DV1, DV2, A0;
};

inline Vjets vjets_at(const TestField& f, const FJet& fj, const QNode& q) {
  Vjets r;
  r.v1 = f.V1->jet(q.eta, q.tau);
  r.v2 = f.V2->jet(q.eta, q.tau);
  r.NV1 = ngrad(r.v1, fj.f);
  r.NV2 = ngrad(r.v2, fj.f);
  r.DV1 = dop(r.v1, fj.f, fj.psi);
  r.DV2 = dop(r.v2, fj.f, fj.psi);
  r.A0 = r.DV2 - 2.0 * fj.psi * r.NV1 - fj.f * r.DV1;
  return r;
}
}  // namespace

double first_variation(const DiffeoFamily& fam, const ResolvedDomain& R) {
  return integrate_nodes(fam, R, [&](std::size_t i, const QNode& q) {
    if (!in_support(fam.field, q)) return 0.0;
    const FJet& fj = R.fj[i];
    const Vjets v = vjets_at(fam.field, fj, q);
    const double root = std::sqrt(1.0 + fj.psi * fj.psi);
    return fj.psi / root * v.A0 + root * (v.v1.de + v.v2.dt);
  });
}

double second_variation(const DiffeoFamily& fam, const ResolvedDomain& R) {
  return integrate_nodes(fam, R, [&](std::size_t i, const QNode& q) {
    if (!in_support(fam.field, q)) return 0.0;
    const FJet& fj = R.fj[i];
    const Vjets v = vjets_at(fam.field, fj, q);
    const double one = 1.0 + fj.psi * fj.psi;
    const double root = std::sqrt(one);
    const double b1 = v.A0 * v.A0 / (one * root);
    const double b2 =
        fj.psi / root *
        (-4.0 * v.DV2 * v.NV1 - 2.0 * v.NV2 * v.DV1 +
         6.0 * fj.f * v.NV1 * v.DV1 + 6.0 * fj.psi * v.NV1 * v.NV1);
    const double b3 =
        2.0 * fj.psi / root * v.A0 * (v.v1.de + v.v2.dt);
    const double b4 =
        2.0 * root * (v.v1.de * v.v2.dt - v.v1.dt * v.v2.de);
    return b1 + b2 + b3 + b4;
  });
}

LagrangianSecond second_variation_lagrangian(const DiffeoFamily& fam,
                                             const ResolvedDomain& R) {
  if (R.dtau_psi.empty())
    throw Error(errc::bad_input,
                "second_variation_lagrangian needs a domain resolved with "
                "d(psi)/d(tau)");
  check_support(fam.field, *R.dom);
  const auto& nodes = R.dom->nodes();
  std::vector<double> graph(nodes.size(), 0.0), leafs(nodes.size(), 0.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const QNode& q = nodes[i];
    if (!in_support(fam.field, q)) continue;
    const FJet& fj = R.fj[i];
    const Vjets v = vjets_at(fam.field, fj, q);
    const double one = 1.0 + fj.psi * fj.psi;
    const double root = std::sqrt(one);
    // transported normal speed: gradient of V2 minus gradient of (f V1)
    const double m = v.NV2 - (fj.psi * v.v1.v + fj.f * v.NV1);
    graph[i] = q.w * v.A0 * v.A0 / (one * root);
    leafs[i] = q.w * R.dtau_psi[i] / (one * root) * m * m;
  }
  return {pairwise_sum(std::move(graph)), pairwise_sum(std::move(leafs))};
}

double first_variation(const IntrinsicFunction& F, const DiffeoFamily& fam,
                       const QuadratureDomain& D) {
  return first_variation(fam, resolve_domain(F, D));
}
double second_variation(const IntrinsicFunction& F, const DiffeoFamily& fam,
                        const QuadratureDomain& D) {
  return second_variation(fam, resolve_domain(F, D));
}
LagrangianSecond second_variation_lagrangian(const IntrinsicFunction& F,
                                             const DiffeoFamily& fam,
                                             const QuadratureDomain& D) {
  return second_variation_lagrangian(fam, resolve_domain(F, D, true));
}

// ------------------------------------------------------- PDE residual

double minimal_pde_residual(const IntrinsicFunction& F,
                            const QuadratureDomain& D, double h,
                            int rk_steps) {
  if (!(h > 0.0)) throw Error(errc::bad_input, "stencil spacing must be > 0");
  int n = 4;
  if (!F.exact_leaves()) {
    n = std::max(rk_steps, 8);
    n += (4 - n % 4) % 4;  // stencil points must land on steps
  }
  const int stride = n / 4;
  double worst = 0.0;
  for (const QNode& q : D.nodes()) {
    const Curve2 c = F.curve(q.eta, q.tau, -2.0 * h, 2.0 * h, n);
    if (c.truncated)
      throw Error(errc::out_of_window,
                  "integral curve left the window inside the domain");
    double u[5];
    for (int k = 0; k < 5; ++k) {
      const FJet fj = F.fjet(c.eta[k * stride], c.tau[k * stride]);
      u[k] = fj.psi / std::sqrt(1.0 + fj.psi * fj.psi);
    }
    const double d1 = (u[0] - 8.0 * u[1] + 8.0 * u[3] - u[4]) / (12.0 * h);
    const double d2 =
        (-u[0] + 16.0 * u[1] - 30.0 * u[2] + 16.0 * u[3] - u[4]) /
        (12.0 * h * h);
    const double res = std::abs(d2 + 2.0 * F.dtau_f(q.eta, q.tau) * d1);
    if (res > worst) worst = res;
  }
  return worst;
}

// -------------------------------------------------- finite differences

FdDerivatives fd_derivatives(
    const std::vector<std::pair<double, double>>& samples) {
  double g0 = 0;
  bool have0 = false;
  std::vector<std::pair<double, double>> pos, neg;
  for (const auto& [e, g] : samples) {
    if (e == 0.0) {
      if (have0) throw Error(errc::bad_input, "duplicate eps = 0 sample");
      g0 = g;
      have0 = true;
    } else if (e > 0.0) {
      pos.emplace_back(e, g);
    } else {
      neg.emplace_back(-e, g);
    }
  }
  auto by_eps = [](const auto& a, const auto& b) { return a.first < b.first; };
  std::sort(pos.begin(), pos.end(), by_eps);
  std::sort(neg.begin(), neg.end(), by_eps);
  if (!have0 || pos.size() != 2 || neg.size() != 2)
    throw Error(errc::bad_input,
                "finite-difference schedule must be {0, +-h/2, +-h}");
  for (int i = 0; i < 2; ++i)
    if (std::abs(pos[i].first - neg[i].first) >
        1e-12 * pos[i].first)
      throw Error(errc::bad_input,
                  "finite-difference schedule must be symmetric");
  if (std::abs(pos[1].first - 2.0 * pos[0].first) > 1e-9 * pos[1].first)
    throw Error(errc::bad_input,
                "finite-difference steps must have ratio 2");

  const double h = pos[1].first;
  const double d1h = (pos[1].second - neg[1].second) / (2.0 * h);
  const double d1h2 = (pos[0].second - neg[0].second) / h;
  const double d2h = (pos[1].second - 2.0 * g0 + neg[1].second) / (h * h);
  const double d2h2 =
      (pos[0].second - 2.0 * g0 + neg[0].second) / (0.25 * h * h);
  FdDerivatives r;
  r.first = (4.0 * d1h2 - d1h) / 3.0;
  r.err_first = std::abs(r.first - d1h2);
  r.second = (4.0 * d2h2 - d2h) / 3.0;
  r.err_second = std::abs(r.second - d2h2);
  return r;
}

}  // namespace heisvar
