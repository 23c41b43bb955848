#include "heisvar/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace heisvar {

void gauss_legendre(int q, std::vector<double>& x, std::vector<double>& w) {
  if (q < 1 || q > 64)
    throw Error(errc::bad_input, "quadrature order must be in [1, 64]");
  x.assign(q, 0.0);
  w.assign(q, 0.0);
  // Newton iteration on the Legendre polynomial, one root per cluster of
  // the Chebyshev initial guess.
  for (int k = 0; k < q; ++k) {
    double xi = std::cos(M_PI * (k + 0.75) / (q + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = xi;
      for (int n = 2; n <= q; ++n) {
        const double p2 = ((2 * n - 1) * xi * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      // for q == 1: p1 = x, p0 = 1
      pp = q * (xi * p1 - p0) / (xi * xi - 1.0);
      const double dx = p1 / pp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    x[q - 1 - k] = xi;  // ascending order
    w[q - 1 - k] = 2.0 / ((1.0 - xi * xi) * pp * pp);
  }
}

double pairwise_sum(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::size_t n = v.size();
  while (n > 1) {
    std::size_t m = n / 2;
    for (std::size_t i = 0; i < m; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2) {
      v[m] = v[n - 1];
      ++m;
    }
    n = m;
  }
  return v[0];
}

QuadratureDomain::QuadratureDomain(Box box, int cells, int order)
    : box_(box), cells_(cells), order_(order) {
  if (!(box.eta1 > box.eta0) || !(box.tau1 > box.tau0))
    throw Error(errc::bad_input, "quadrature box must have positive size");
  if (cells < 1) throw Error(errc::bad_input, "cell count must be >= 1");
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  const double he = box.eta_len() / cells, ht = box.tau_len() / cells;
  nodes_.reserve(static_cast<std::size_t>(cells) * cells * order * order);
  for (int ci = 0; ci < cells; ++ci) {
    const double e0 = box.eta0 + ci * he;
    for (int cj = 0; cj < cells; ++cj) {
      const double t0 = box.tau0 + cj * ht;
      for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
          nodes_.push_back({e0 + 0.5 * he * (1.0 + gx[a]),
                            t0 + 0.5 * ht * (1.0 + gx[b]),
                            0.25 * he * ht * gw[a] * gw[b]});
    }
  }
}

double QuadratureDomain::integrate(
    const std::function<double(const QNode&)>& g) const {
  std::vector<double> terms(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const QNode& q = nodes_[i];
    double v;
    try {
      v = g(q);
    } catch (Error& e) {
      char loc[96];
      std::snprintf(loc, sizeof loc, " (at node eta=%.12g, tau=%.12g)", q.eta,
                    q.tau);
      throw Error(e.code, std::string(e.what()) + loc);
    }
    if (!std::isfinite(v)) {
      char msg[128];
      std::snprintf(msg, sizeof msg,
                    "non-finite integrand at node eta=%.12g, tau=%.12g", q.eta,
                    q.tau);
      throw Error(errc::evaluation, msg);
    }
    terms[i] = q.w * v;
  }
  return pairwise_sum(std::move(terms));
}

}  // namespace heisvar
