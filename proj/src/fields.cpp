#include "heisvar/fields.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace heisvar {

namespace {
// beta(u) = (1-u^2)^4 and derivatives; zero outside (-1, 1).
inline void beta3(double u, double& b, double& bd, double& bdd) {
  const double d = 1.0 - u * u;
  if (d <= 0.0) {
    b = bd = bdd = 0.0;
    return;
  }
  const double d2 = d * d, d3 = d2 * d;
  b = d2 * d2;
  bd = -8.0 * u * d3;
  bdd = d2 * (56.0 * u * u - 8.0);
}
}  // namespace

Bump::Bump(double amp, double ce, double we, double ct, double wt)
    : amp_(amp), ce_(ce), we_(we), ct_(ct), wt_(wt) {
  if (!(we > 0.0) || !(wt > 0.0))
    throw Error(errc::bad_input, "bump widths must be positive");
}

Jet2 Bump::jet(double eta, double tau) const {
  const double u = (eta - ce_) / we_, w = (tau - ct_) / wt_;
  double bu, bud, budd, bw, bwd, bwdd;
  beta3(u, bu, bud, budd);
  beta3(w, bw, bwd, bwdd);
  Jet2 j;
  j.v = amp_ * bu * bw;
  j.de = amp_ * bud * bw / we_;
  j.dt = amp_ * bu * bwd / wt_;
  j.dee = amp_ * budd * bw / (we_ * we_);
  j.det = amp_ * bud * bwd / (we_ * wt_);
  j.dtt = amp_ * bu * bwdd / (wt_ * wt_);
  return j;
}

Jet2 ProductField::jet(double eta, double tau) const {
  const Jet2 a = a_->jet(eta, tau), b = b_->jet(eta, tau);
  Jet2 j;
  j.v = a.v * b.v;
  j.de = a.de * b.v + a.v * b.de;
  j.dt = a.dt * b.v + a.v * b.dt;
  j.dee = a.dee * b.v + 2.0 * a.de * b.de + a.v * b.dee;
  j.det = a.det * b.v + a.de * b.dt + a.dt * b.de + a.v * b.det;
  j.dtt = a.dtt * b.v + 2.0 * a.dt * b.dt + a.v * b.dtt;
  return j;
}

namespace {
struct DrawCtx {
  std::mt19937_64 rng;
  const Box& box;
  int cells;
  bool align;
};

BumpSpec draw_bump(DrawCtx& c) {
  const double he = c.box.eta_len() / c.cells, ht = c.box.tau_len() / c.cells;
  std::uniform_int_distribution<int> kdist(c.cells / 6, c.cells / 4);
  const int ke = kdist(c.rng), kt = kdist(c.rng);
  // center cell index such that the support stays >= 1 cell inside the box
  std::uniform_int_distribution<int> ce_dist(ke + 1, c.cells - ke - 1);
  std::uniform_int_distribution<int> ct_dist(kt + 1, c.cells - kt - 1);
  const int ie = ce_dist(c.rng), it = ct_dist(c.rng);
  std::uniform_real_distribution<double> mag(0.5, 1.0);
  std::uniform_int_distribution<int> sgn(0, 1);
  BumpSpec s;
  if (c.align) {
    s.ce = c.box.eta0 + ie * he;
    s.ct = c.box.tau0 + it * ht;
    s.we = ke * he;
    s.wt = kt * ht;
  } else {
    std::uniform_real_distribution<double> jit(-0.45, 0.45);
    s.we = (ke + jit(c.rng)) * he;
    s.wt = (kt + jit(c.rng)) * ht;
    s.ce = c.box.eta0 + ie * he + jit(c.rng) * he;
    s.ct = c.box.tau0 + it * ht + jit(c.rng) * ht;
    s.we = std::min(s.we, std::min(s.ce - c.box.eta0, c.box.eta1 - s.ce) * 0.95);
    s.wt = std::min(s.wt, std::min(s.ct - c.box.tau0, c.box.tau1 - s.ct) * 0.95);
  }
  const double m = std::min(s.we, s.wt);
  s.amp = (sgn(c.rng) ? 1.0 : -1.0) * mag(c.rng) * 3.0 * m * m;
  return s;
}

Box bump_box(const BumpSpec& s) {
  return {s.ce - s.we, s.ce + s.we, s.ct - s.wt, s.ct + s.wt};
}

Box box_union(const Box& a, const Box& b) {
  return {std::min(a.eta0, b.eta0), std::max(a.eta1, b.eta1),
          std::min(a.tau0, b.tau0), std::max(a.tau1, b.tau1)};
}
}  // namespace

TestField random_field(std::uint64_t seed, const Box& box, int cells,
                       bool with_w, bool align) {
  if (cells < 16)
    throw Error(errc::bad_input, "random_field needs >= 16 cells");
  DrawCtx c{std::mt19937_64(seed), box, cells, align};
  const BumpSpec s1 = draw_bump(c), s2 = draw_bump(c);
  TestField f;
  f.V1 = std::make_shared<Bump>(s1.amp, s1.ce, s1.we, s1.ct, s1.wt);
  f.V2 = std::make_shared<Bump>(s2.amp, s2.ce, s2.we, s2.ct, s2.wt);
  f.support = box_union(bump_box(s1), bump_box(s2));
  if (with_w) {
    const BumpSpec s3 = draw_bump(c), s4 = draw_bump(c);
    f.W1 = std::make_shared<Bump>(s3.amp, s3.ce, s3.we, s3.ct, s3.wt);
    f.W2 = std::make_shared<Bump>(s4.amp, s4.ce, s4.we, s4.ct, s4.wt);
    f.support = box_union(f.support, box_union(bump_box(s3), bump_box(s4)));
  }
  return f;
}

}  // namespace heisvar
