#include "heisvar/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace heisvar {

namespace {
void need_chart(const HPoint& p, Chart c, const char* who) {
  if (p.chart != c)
    throw Error(errc::bad_input,
                std::string(who) + ": point is in the wrong coordinate chart");
}
}  // namespace

HPoint group_multiply(const HPoint& a, const HPoint& b) {
  need_chart(a, Chart::FirstKind, "group_multiply");
  need_chart(b, Chart::FirstKind, "group_multiply");
  return {a.x + b.x, a.y + b.y,
          a.z + b.z + 0.5 * (a.x * b.y - a.y * b.x), Chart::FirstKind};
}

HPoint group_inverse(const HPoint& a) {
  need_chart(a, Chart::FirstKind, "group_inverse");
  return {-a.x, -a.y, -a.z, Chart::FirstKind};
}

HPoint lift_graph(const IntrinsicFunction& F, double eta, double tau) {
  const double f = F.f(eta, tau);
  return {f, eta, tau - 0.5 * eta * f, Chart::FirstKind};
}

void project_graph(const HPoint& p, double& eta, double& tau) {
  need_chart(p, Chart::FirstKind, "project_graph");
  eta = p.y;
  tau = p.z + 0.5 * p.x * p.y;
}

Curve3 lift_curve(const IntrinsicFunction& F, const Curve2& c) {
  Curve3 r;
  r.t = c.t;
  r.truncated = c.truncated;
  const std::size_t n = c.t.size();
  r.x.resize(n);
  r.y.resize(n);
  r.z.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const HPoint p = lift_graph(F, c.eta[i], c.tau[i]);
    r.x[i] = p.x;
    r.y[i] = p.y;
    r.z[i] = p.z;
  }
  return r;
}

double horizontality_defect(const Curve3& c) {
  const std::size_t n = c.t.size();
  if (n < 3 || c.x.size() != n || c.y.size() != n || c.z.size() != n)
    throw Error(errc::bad_input,
                "horizontality_defect needs >= 3 aligned samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(c.t[i] > c.t[i - 1]))
      throw Error(errc::bad_input, "curve parameter must be increasing");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dt = c.t[i + 1] - c.t[i - 1];
    const double xd = (c.x[i + 1] - c.x[i - 1]) / dt;
    const double yd = (c.y[i + 1] - c.y[i - 1]) / dt;
    const double zd = (c.z[i + 1] - c.z[i - 1]) / dt;
    const double defect = std::abs(zd + 0.5 * (c.y[i] * xd - c.x[i] * yd));
    if (defect > worst) worst = defect;
  }
  return worst;
}

HPoint contact_lift(const FamilyMap& m, const HPoint& q) {
  need_chart(q, Chart::SecondKind, "contact_lift");
  const Jet2 j1 = m.jet1(q.y, q.z), j2 = m.jet2(q.y, q.z);
  const double n1 = j1.de + q.x * j1.dt;
  const double n2 = j2.de + q.x * j2.dt;
  if (!(std::abs(n1) > 1e-12))
    throw Error(errc::degenerate_map,
                "contact lift lost transversality (gradient of phi1 ~ 0)");
  return {n2 / n1, j1.v, j2.v, Chart::SecondKind};
}

ContactReport contact_defect(const std::function<HPoint(const HPoint&)>& Phi,
                             const std::vector<HPoint>& samples, double h) {
  if (!(h > 0.0)) throw Error(errc::bad_input, "step must be > 0");
  ContactReport rep;
  for (const HPoint& p : samples) {
    need_chart(p, Chart::SecondKind, "contact_defect");
    const double hp =
        h * (1.0 + std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z));
    auto col = [&](double dx, double dy, double dz) {
      HPoint a = p, b = p;
      a.x += hp * dx, a.y += hp * dy, a.z += hp * dz;
      b.x -= hp * dx, b.y -= hp * dy, b.z -= hp * dz;
      const HPoint fa = Phi(a), fb = Phi(b);
      return HPoint{(fa.x - fb.x) / (2 * hp), (fa.y - fb.y) / (2 * hp),
                    (fa.z - fb.z) / (2 * hp), Chart::SecondKind};
    };
    const HPoint dxi = col(1, 0, 0);
    const HPoint deta = col(0, 1, 0);
    const HPoint dtau = col(0, 0, 1);
    // pushforwards of the horizontal frame X = d_xi, Y = d_eta + xi d_tau
    const HPoint dX = dxi;
    const HPoint dY{deta.x + p.x * dtau.x, deta.y + p.x * dtau.y,
                    deta.z + p.x * dtau.z, Chart::SecondKind};
    const HPoint q = Phi(p);
    // frame decomposition at q: Z-component of (a,b,c) is c - b xi(q)
    const double zX = dX.z - dX.y * q.x;
    const double zY = dY.z - dY.y * q.x;
    rep.frame_defect = std::max(rep.frame_defect, std::abs(zX));
    rep.frame_defect = std::max(rep.frame_defect, std::abs(zY));
    rep.parallel_defect = std::max(rep.parallel_defect, std::abs(dX.y));
  }
  return rep;
}

}  // namespace heisvar
