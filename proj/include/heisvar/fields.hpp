// Smooth planar scalar fields carrying their 2-jets, the compactly
// supported deformation data built from them, and a deterministic
// generator for randomized bump fields.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "heisvar/types.hpp"

namespace heisvar {

// Value and partial derivatives up to second order at a planar point.
struct Jet2 {
  double v = 0, de = 0, dt = 0, dee = 0, det = 0, dtt = 0;
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v,   a.de + b.de,   a.dt + b.dt,
          a.dee + b.dee, a.det + b.det, a.dtt + b.dtt};
}
inline Jet2 operator*(double s, const Jet2& a) {
  return {s * a.v, s * a.de, s * a.dt, s * a.dee, s * a.det, s * a.dtt};
}

class SmoothField {
 public:
  virtual ~SmoothField() = default;
  virtual Jet2 jet(double eta, double tau) const = 0;
};

// amp * beta((eta-ce)/we) * beta((tau-ct)/wt), beta(u) = (1-u^2)^4.
// Three continuous derivatives at the support edge.
class Bump : public SmoothField {
 public:
  Bump(double amp, double ce, double we, double ct, double wt);
  Jet2 jet(double eta, double tau) const override;
  Box support() const { return {ce_ - we_, ce_ + we_, ct_ - wt_, ct_ + wt_}; }

 private:
  double amp_, ce_, we_, ct_, wt_;
};

class ZeroField : public SmoothField {
 public:
  Jet2 jet(double, double) const override { return {}; }
};

class SumField : public SmoothField {
 public:
  explicit SumField(std::vector<std::shared_ptr<const SmoothField>> parts)
      : parts_(std::move(parts)) {}
  Jet2 jet(double eta, double tau) const override {
    Jet2 j;
    for (const auto& p : parts_) j = j + p->jet(eta, tau);
    return j;
  }

 private:
  std::vector<std::shared_ptr<const SmoothField>> parts_;
};

class ScaledField : public SmoothField {
 public:
  ScaledField(double s, std::shared_ptr<const SmoothField> f)
      : s_(s), f_(std::move(f)) {}
  Jet2 jet(double eta, double tau) const override {
    return s_ * f_->jet(eta, tau);
  }

 private:
  double s_;
  std::shared_ptr<const SmoothField> f_;
};

// Pointwise product with Leibniz 2-jets.
class ProductField : public SmoothField {
 public:
  ProductField(std::shared_ptr<const SmoothField> a,
               std::shared_ptr<const SmoothField> b)
      : a_(std::move(a)), b_(std::move(b)) {}
  Jet2 jet(double eta, double tau) const override;

 private:
  std::shared_ptr<const SmoothField> a_, b_;
};

// Closed-form jets from a callable.
class AnalyticField : public SmoothField {
 public:
  explicit AnalyticField(std::function<Jet2(double, double)> fn)
      : fn_(std::move(fn)) {}
  Jet2 jet(double eta, double tau) const override { return fn_(eta, tau); }

 private:
  std::function<Jet2(double, double)> fn_;
};

// Deformation data: the planar family  phi^eps = Id + eps V + (eps^2/2) W
// is assembled from these components.  V1, V2 are always present; W1, W2
// may be null (treated as zero).  support contains the supports of all
// components and must sit inside any quadrature box used with the field.
struct TestField {
  std::shared_ptr<const SmoothField> V1, V2;
  std::shared_ptr<const SmoothField> W1, W2;
  Box support{0, 0, 0, 0};
};

struct BumpSpec {
  double amp = 0, ce = 0, we = 0, ct = 0, wt = 0;
};

// Deterministic bump-field generator.  One bump per component; amplitudes
// are scaled with the widths so second derivatives stay O(10) regardless
// of the box.  With align = true, centers and half-widths snap to the
// lattice of an n-cell grid so supports sit on cell boundaries and the
// integrands stay smooth inside every quadrature cell.
TestField random_field(std::uint64_t seed, const Box& box, int cells,
                       bool with_w = false, bool align = true);

}  // namespace heisvar
