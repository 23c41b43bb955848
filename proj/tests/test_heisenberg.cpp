#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "heisvar/heisenberg.hpp"
#include "oracles.hpp"

using namespace heisvar;

namespace {

HPoint pt(double x, double y, double z, Chart c = Chart::FirstKind) {
  return HPoint{x, y, z, c};
}

}  // namespace

TEST_CASE("the group law carries the planar cross term") {
  const HPoint p = group_multiply(pt(1, 2, 3), pt(4, 5, 6));
  CHECK(p.x == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(p.y == doctest::Approx(7.0).epsilon(1e-15));
  // 3 + 6 + (1*5 - 2*4)/2 = 9 - 1.5
  CHECK(p.z == doctest::Approx(7.5).epsilon(1e-15));
}

TEST_CASE("the group law is associative and inverses cancel") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const HPoint a = pt(u(rng), u(rng), u(rng));
    const HPoint b = pt(u(rng), u(rng), u(rng));
    const HPoint c = pt(u(rng), u(rng), u(rng));
    const HPoint lhs = group_multiply(group_multiply(a, b), c);
    const HPoint rhs = group_multiply(a, group_multiply(b, c));
    CHECK(lhs.x == doctest::Approx(rhs.x).epsilon(1e-12).scale(1));
    CHECK(lhs.y == doctest::Approx(rhs.y).epsilon(1e-12).scale(1));
    CHECK(lhs.z == doctest::Approx(rhs.z).epsilon(1e-12).scale(1));

    const HPoint e = group_multiply(a, group_inverse(a));
    CHECK(std::abs(e.x) <= 1e-14);
    CHECK(std::abs(e.y) <= 1e-14);
    CHECK(std::abs(e.z) <= 1e-14);
  }
}

TEST_CASE("points from different charts never mix") {
  CHECK_THROWS_AS(
      group_multiply(pt(0, 0, 0), pt(0, 0, 0, Chart::SecondKind)), Error);
  CHECK_THROWS_AS(group_multiply(pt(0, 0, 0, Chart::SecondKind),
                                 pt(0, 0, 0, Chart::SecondKind)),
                  Error);
}

TEST_CASE("graph lift and projection are mutually inverse") {
  FoliationFunction F(make_profile("cubic"));
  for (double eta : {0.55, 0.8, 0.97}) {
    for (double tau : {2.1, 2.5, 2.9}) {
      const HPoint p = lift_graph(F, eta, tau);
      CHECK(p.chart == Chart::FirstKind);
      CHECK(p.x == F.f(eta, tau));
      double e2 = 0, t2 = 0;
      project_graph(p, e2, t2);
      CHECK(e2 == eta);  // the y coordinate is copied through
      CHECK(t2 == doctest::Approx(tau).epsilon(1e-14).scale(1));
    }
  }
}

TEST_CASE("lifted leaves are straight horizontal lines") {
  // Each leaf of the parabola foliation lifts to a line segment in the
  // group: x = A eta + B is affine, z = zeta + B eta / 2 is affine, and
  // the horizontality relation z' = (x y' - y x') / 2 holds identically.
  FoliationFunction F(make_profile("cubic"));
  const Curve2 leaf = F.curve(0.75, 2.4, -0.2, 0.2, 64, CurveMode::ExactLeaf);
  REQUIRE(leaf.eta.size() == 65);
  const Curve3 lifted = lift_curve(F, leaf);
  REQUIRE(lifted.x.size() == 65);

  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < lifted.x.size(); ++i) {
    worst = std::max(worst, std::abs(lifted.x[i + 1] - 2 * lifted.x[i] +
                                     lifted.x[i - 1]));
    worst = std::max(worst, std::abs(lifted.y[i + 1] - 2 * lifted.y[i] +
                                     lifted.y[i - 1]));
    worst = std::max(worst, std::abs(lifted.z[i + 1] - 2 * lifted.z[i] +
                                     lifted.z[i - 1]));
  }
  CHECK(worst <= 1e-10);
  CHECK(horizontality_defect(lifted) <= 1e-10);
}

TEST_CASE("vertical segments have unit horizontality defect") {
  Curve3 c;
  for (int i = 0; i <= 32; ++i) {
    const double t = i / 32.0;
    c.t.push_back(t);
    c.x.push_back(0.3);
    c.y.push_back(-0.2);
    c.z.push_back(t);  // pure center direction: z' = 1, x' = y' = 0
  }
  CHECK(horizontality_defect(c) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("horizontality diagnostics validate their input") {
  Curve3 c;
  c.t = {0.0, 1.0};
  c.x = {0.0, 0.0};
  c.y = {0.0, 0.0};
  c.z = {0.0, 0.0};
  CHECK_THROWS_AS(horizontality_defect(c), Error);  // too few samples
  Curve3 d;
  d.t = {0.0, 1.0, 0.5};
  d.x = {0, 0, 0};
  d.y = {0, 0, 0};
  d.z = {0, 0, 0};
  CHECK_THROWS_AS(horizontality_defect(d), Error);  // non-increasing t
}

TEST_CASE("the identity family lifts to the identity contact map") {
  TestField tf = random_field(17, {-1, 1, -1, 1}, 16, false, true);
  DiffeoFamily fam{tf};
  FamilyMap m(fam, 0.0);
  std::vector<HPoint> samples;
  for (double xi : {-0.8, 0.0, 0.9}) {
    for (double eta : {-0.7, 0.1, 0.8}) {
      for (double tau : {-0.6, 0.2, 0.7}) {
        const HPoint q = pt(xi, eta, tau, Chart::SecondKind);
        const HPoint r = contact_lift(m, q);
        CHECK(r.chart == Chart::SecondKind);
        CHECK(r.x == doctest::Approx(q.x).epsilon(1e-13).scale(1));
        CHECK(r.y == q.y);
        CHECK(r.z == q.z);
        samples.push_back(q);
      }
    }
  }
  const ContactReport rep = contact_defect(
      [&](const HPoint& q) { return contact_lift(m, q); }, samples);
  CHECK(rep.frame_defect <= 1e-10);
}

TEST_CASE("lifted graph deformations are contact maps") {
  TestField tf = random_field(4, {-1, 1, -1, 1}, 16, false, true);
  DiffeoFamily fam{tf};
  FamilyMap m(fam, 0.05);
  std::vector<HPoint> samples;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      for (int c = 0; c < 5; ++c) {
        samples.push_back(pt(-1 + 0.5 * a, -1 + 0.5 * b, -1 + 0.5 * c,
                             Chart::SecondKind));
      }
    }
  }
  const ContactReport rep = contact_defect(
      [&](const HPoint& q) { return contact_lift(m, q); }, samples, 1e-5);
  // the defect is pure finite-difference truncation, O(h^2)
  CHECK(rep.frame_defect <= 1e-7);
}

TEST_CASE("a sheared control map is detectably non-contact") {
  TestField tf = random_field(4, {-1, 1, -1, 1}, 16, false, true);
  DiffeoFamily fam{tf};
  FamilyMap m(fam, 0.05);
  std::vector<HPoint> samples;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      for (int c = 0; c < 5; ++c) {
        samples.push_back(pt(-1 + 0.5 * a, -1 + 0.5 * b, -1 + 0.5 * c,
                             Chart::SecondKind));
      }
    }
  }
  const ContactReport rep = contact_defect(
      [&](const HPoint& q) {
        HPoint p = contact_lift(m, q);
        p.z += q.x * q.x;  // breaks the contact relation by 2 xi d xi
        return p;
      },
      samples, 1e-5);
  CHECK(rep.frame_defect >= 1e-1);
}

TEST_CASE("contact lifting requires polarized coordinates") {
  TestField tf = random_field(4, {-1, 1, -1, 1}, 16, false, true);
  DiffeoFamily fam{tf};
  FamilyMap m(fam, 0.05);
  CHECK_THROWS_AS(contact_lift(m, pt(0, 0, 0, Chart::FirstKind)), Error);
}
