#include <cmath>
#include <cstdio>
#include <vector>

#include "heisvar/profile.hpp"
#include "heisvar/quadrature.hpp"

namespace heisvar {

namespace {
// Bump kernel on (-1, 1) and its derivative.
inline double kern(double u) {
  const double d = 1.0 - u * u;
  return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
}
inline double kern_d(double u) {
  const double d = 1.0 - u * u;
  return d > 0.0 ? kern(u) * (-2.0 * u / (d * d)) : 0.0;
}
}  // namespace

SampledProfile mollify(const LagrangianProfile& p, double eps, int n_quad) {
  if (!(eps > 0.0)) throw Error(errc::bad_input, "mollify: eps must be > 0");
  if (n_quad < 8) throw Error(errc::bad_input, "mollify: n_quad too small");
  const Interval w = p.window();
  const Interval out{w.lo + eps, w.hi - eps};
  if (!(out.width() > 0.0))
    throw Error(errc::bad_input,
                "mollify: window too small for radius eps = " +
                    std::to_string(eps));

  std::vector<double> x, wt;
  gauss_legendre(n_quad, x, wt);

  // Discrete unit mass: with the same rule used for the convolution,
  // constants are mapped to themselves exactly.  Sum symmetric node pairs
  // so the odd moments cancel exactly as well.
  const int half = n_quad / 2;
  double mass = 0.0;
  for (int j = 0; j < half; ++j)
    mass += wt[j] * kern(x[j]) + wt[n_quad - 1 - j] * kern(x[n_quad - 1 - j]);
  if (n_quad % 2) mass += wt[half] * kern(x[half]);

  const int n = static_cast<int>(std::ceil(out.width() / (eps / 8.0))) + 1;
  std::vector<double> z(n), a(n), b(n), da(n), db(n);
  for (int i = 0; i < n; ++i) {
    const double zi = out.lo + out.width() * i / (n - 1);
    z[i] = zi;
    double av = 0, bv = 0, dav = 0, dbv = 0;
    // symmetric-pair accumulation
    for (int j = 0; j < half; ++j) {
      const int j2 = n_quad - 1 - j;
      double aj, bj, ak, bk;
      p.AB(zi - eps * x[j], aj, bj);
      p.AB(zi - eps * x[j2], ak, bk);
      const double kj = wt[j] * kern(x[j]), kk = wt[j2] * kern(x[j2]);
      const double dj = wt[j] * kern_d(x[j]), dk = wt[j2] * kern_d(x[j2]);
      av += kj * aj + kk * ak;
      bv += kj * bj + kk * bk;
      dav += dj * aj + dk * ak;
      dbv += dj * bj + dk * bk;
    }
    if (n_quad % 2) {
      double am, bm;
      p.AB(zi - eps * x[half], am, bm);
      av += wt[half] * kern(x[half]) * am;
      bv += wt[half] * kern(x[half]) * bm;
      // kern_d(0) = 0, nothing to add for the slopes
    }
    a[i] = av / mass;
    b[i] = bv / mass;
    da[i] = dav / (eps * mass);
    db[i] = dbv / (eps * mass);
  }
  char name[96];
  std::snprintf(name, sizeof name, "mollified(%s, %g)", p.describe().c_str(),
                eps);
  return SampledProfile(name, std::move(z), std::move(a), std::move(b),
                        std::move(da), std::move(db));
}

}  // namespace heisvar
