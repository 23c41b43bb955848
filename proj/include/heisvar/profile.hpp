// Lagrangian profiles: a pair of curves zeta -> (A, B) describing the
// parabola family  g(t, zeta) = A(zeta) t^2/2 + B(zeta) t + zeta.
// When the admissibility conditions hold, the parabolas foliate the plane
// and carry a graph function: f = A(zeta) eta + B(zeta) on the leaf
// labelled zeta, whose intrinsic gradient is constant (= A) along leaves.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "heisvar/types.hpp"

namespace heisvar {

class LagrangianProfile {
 public:
  virtual ~LagrangianProfile() = default;
  virtual double A(double zeta) const = 0;
  virtual double B(double zeta) const = 0;
  // Evaluate both curves at once (one table lookup for sampled profiles).
  virtual void AB(double zeta, double& a, double& b) const {
    a = A(zeta);
    b = B(zeta);
  }
  virtual bool has_derivatives() const = 0;
  virtual double dA(double zeta) const;  // throws unless has_derivatives()
  virtual double dB(double zeta) const;
  virtual std::string describe() const = 0;
  const Interval& window() const { return window_; }

 protected:
  Interval window_{-1.0, 1.0};
};

// tau value of the leaf labelled zeta at abscissa t.
double leaf(const LagrangianProfile& p, double t, double zeta);
// d(leaf)/d(zeta); needs profile derivatives.
double leaf_dzeta(const LagrangianProfile& p, double t, double zeta);

// Solve leaf(p, eta, zeta) = tau for zeta inside the certified window by
// bracket expansion followed by bisection.  |leaf - tau| <= tol on return
// (up to the floating-point floor of the problem).
double invert_foliation(const LagrangianProfile& p, double eta, double tau,
                        double tol);

struct PairMargin {
  double zeta1 = 0, zeta2 = 0, margin = 0;
};
struct GrowthCheck {
  bool applicable = false;  // slopes of this sign occur on the window
  double edge_zeta = 0;     // window edge where the check is evaluated
  double value = 0;         // zeta - B(zeta)^2 / (2 A(zeta)) at the edge
  double threshold = 0;
  bool passed = true;
};
struct AdmissibilityReport {
  bool passed = false;
  int n_samples = 0;
  double tol = 0;
  // Least separation margin 2(A-A')(z-z') - (B-B')^2 among sampled pairs
  // with distinct slopes.
  PairMargin worst_pair{0, 0, 0};
  long n_tied = 0;        // sampled pairs with |A - A'| <= tol
  double worst_tie = 0;   // largest |B - B'| among tied pairs
  GrowthCheck upper, lower;
  std::vector<std::string> failures;  // human-readable reasons
};

// Sample the window uniformly and test every pair: either the slopes tie
// (then the offsets must tie too) or the separation margin must be
// nonnegative up to tol * (1 + |z - z'|)^2.  Slopes of definite sign
// additionally require the window edge value zeta - B^2/(2A) to clear the
// given threshold.
AdmissibilityReport check_admissibility(const LagrangianProfile& p,
                                        int n_samples = 200, double tol = 1e-9,
                                        double threshold_hi = 0.0,
                                        double threshold_lo = 0.0);

// Profile built from closed-form callables.
class AnalyticProfile : public LagrangianProfile {
 public:
  using Fn = std::function<double(double)>;
  AnalyticProfile(std::string name, Interval window, Fn A, Fn B, Fn dA = {},
                  Fn dB = {});
  double A(double zeta) const override { return a_(zeta); }
  double B(double zeta) const override { return b_(zeta); }
  bool has_derivatives() const override { return bool(da_) && bool(db_); }
  double dA(double zeta) const override;
  double dB(double zeta) const override;
  std::string describe() const override { return name_; }

 private:
  std::string name_;
  Fn a_, b_, da_, db_;
};

// Profile given by samples on a uniform grid, evaluated with cubic Hermite
// interpolation.  The slopes of A are limited (Fritsch-Carlson region) so
// the interpolant is monotone wherever the samples are.
class SampledProfile : public LagrangianProfile {
 public:
  // Slopes estimated by three-point finite differences.
  SampledProfile(std::string name, std::vector<double> zeta,
                 std::vector<double> a, std::vector<double> b);
  // Slopes supplied by the caller (e.g. exact kernel-derivative values).
  SampledProfile(std::string name, std::vector<double> zeta,
                 std::vector<double> a, std::vector<double> b,
                 std::vector<double> da, std::vector<double> db);

  double A(double zeta) const override;
  double B(double zeta) const override;
  void AB(double zeta, double& a, double& b) const override;
  bool has_derivatives() const override { return true; }
  double dA(double zeta) const override;
  double dB(double zeta) const override;
  std::string describe() const override { return name_; }

  const std::vector<double>& grid() const { return z_; }
  const std::vector<double>& a_samples() const { return a_; }
  const std::vector<double>& b_samples() const { return b_; }
  const std::vector<double>& a_slopes() const { return da_; }
  const std::vector<double>& b_slopes() const { return db_; }

 private:
  void finish(bool limit_a);
  std::size_t locate(double zeta) const;
  std::string name_;
  std::vector<double> z_, a_, b_, da_, db_;
};

// Registry: "plane(alpha)", "ramp(c)", "cubic".  Pass a degenerate window
// ({0,0}) to use the built-in default for the name.
std::shared_ptr<LagrangianProfile> make_profile(const std::string& name,
                                                Interval window = {0.0, 0.0});

// CSV exchange format: header "zeta,A,B" or "zeta,A,B,dA,dB".
std::shared_ptr<SampledProfile> load_profile_csv(const std::string& path);
void save_profile_csv(const SampledProfile& p, const std::string& path);

// Smooth both curves with the compactly supported bump kernel
// exp(-1/(1-u^2)) of radius eps (discretely normalized to unit mass).
// The result is sampled at spacing <= eps/8 on the input window shrunk by
// eps, with slopes taken from the kernel-derivative quadrature (so no
// smoothness of A, B is needed).
SampledProfile mollify(const LagrangianProfile& p, double eps,
                       int n_quad = 64);

}  // namespace heisvar
