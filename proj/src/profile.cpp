#include "heisvar/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

namespace heisvar {

double LagrangianProfile::dA(double) const {
  throw Error(errc::bad_input,
              "profile '" + describe() + "' has no derivative data");
}
double LagrangianProfile::dB(double) const {
  throw Error(errc::bad_input,
              "profile '" + describe() + "' has no derivative data");
}

double leaf(const LagrangianProfile& p, double t, double zeta) {
  double a, b;
  p.AB(zeta, a, b);
  return 0.5 * a * t * t + b * t + zeta;
}

double leaf_dzeta(const LagrangianProfile& p, double t, double zeta) {
  return 0.5 * p.dA(zeta) * t * t + p.dB(zeta) * t + 1.0;
}

// ------------------------------------------------------------ inversion

double invert_foliation(const LagrangianProfile& p, double eta, double tau,
                        double tol) {
  const Interval w = p.window();
  auto residual = [&](double z) {
    const double r = leaf(p, eta, z) - tau;
    if (!std::isfinite(r))
      throw Error(errc::evaluation,
                  "leaf value not finite at zeta=" + std::to_string(z));
    return r;
  };

  // Expand a bracket around the initial guess (leaves are increasing in
  // zeta for admissible profiles), clamped to the certified window.
  double lo = std::clamp(tau, w.lo, w.hi);
  double hi = lo;
  double rlo = residual(lo), rhi = rlo;
  double step = 0.5 * (1.0 + std::abs(tau));
  for (int k = 0; k < 200 && (rlo > 0.0 || rhi < 0.0); ++k) {
    bool moved = false;
    if (rlo > 0.0 && lo > w.lo) {
      lo = std::max(w.lo, lo - step);
      rlo = residual(lo);
      moved = true;
    }
    if (rhi < 0.0 && hi < w.hi) {
      hi = std::min(w.hi, hi + step);
      rhi = residual(hi);
      moved = true;
    }
    step *= 2.0;
    if (!moved) break;
  }
  if (rlo > 0.0 || rhi < 0.0) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "no leaf through (eta=%g, tau=%g) inside window [%g, %g]",
                  eta, tau, w.lo, w.hi);
    throw Error(errc::out_of_window, msg);
  }

  // Bisection.  Accept on |residual| <= tol, or on the floating-point
  // floor of the bracket.
  const double floor_tol =
      512.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(tau));
  double mid = 0.5 * (lo + hi), rmid = 0.0;
  for (int k = 0; k < 256; ++k) {
    mid = 0.5 * (lo + hi);
    rmid = residual(mid);
    if (std::abs(rmid) <= tol) return mid;
    if (rmid < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <=
        4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(mid)))
      break;
  }
  if (std::abs(rmid) <= std::max(tol, floor_tol)) return mid;
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "foliation inversion stalled at (eta=%g, tau=%g): residual %g "
                "exceeds tol %g",
                eta, tau, rmid, tol);
  throw Error(errc::evaluation, msg);
}

// ------------------------------------------------------- admissibility

AdmissibilityReport check_admissibility(const LagrangianProfile& p,
                                        int n_samples, double tol,
                                        double threshold_hi,
                                        double threshold_lo) {
  if (n_samples < 2) throw Error(errc::bad_input, "need at least 2 samples");
  const Interval w = p.window();
  AdmissibilityReport rep;
  rep.n_samples = n_samples;
  rep.tol = tol;

  std::vector<double> z(n_samples), a(n_samples), b(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    z[i] = w.lo + (w.hi - w.lo) * i / (n_samples - 1);
    p.AB(z[i], a[i], b[i]);
    if (!std::isfinite(a[i]) || !std::isfinite(b[i]))
      throw Error(errc::evaluation,
                  "profile value not finite at zeta=" + std::to_string(z[i]));
  }

  rep.worst_pair.margin = std::numeric_limits<double>::infinity();
  bool pairs_ok = true;
  for (int i = 0; i < n_samples; ++i) {
    for (int j = i + 1; j < n_samples; ++j) {
      const double da = a[i] - a[j], db = b[i] - b[j], dz = z[i] - z[j];
      if (std::abs(da) <= tol) {
        ++rep.n_tied;
        const double t = std::abs(db);
        if (t > rep.worst_tie) rep.worst_tie = t;
        if (t > tol) {
          pairs_ok = false;
          if (rep.failures.size() < 8) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "tied slopes at zeta=%g, %g but offsets differ by %g",
                          z[j], z[i], t);
            rep.failures.push_back(msg);
          }
        }
        continue;
      }
      const double margin = 2.0 * da * dz - db * db;
      if (margin < rep.worst_pair.margin)
        rep.worst_pair = {z[j], z[i], margin};
      const double scale = (1.0 + std::abs(dz)) * (1.0 + std::abs(dz));
      if (margin < -tol * scale) {
        pairs_ok = false;
        if (rep.failures.size() < 8) {
          char msg[160];
          std::snprintf(msg, sizeof msg,
                        "separation margin %g < 0 at zeta=%g, %g", margin,
                        z[j], z[i]);
          rep.failures.push_back(msg);
        }
      }
    }
  }
  if (!std::isfinite(rep.worst_pair.margin)) rep.worst_pair.margin = 0.0;

  // Growth checks at the window edges, one per slope sign present.
  const double amax = *std::max_element(a.begin(), a.end());
  const double amin = *std::min_element(a.begin(), a.end());
  if (amax > tol) {
    rep.upper.applicable = true;
    rep.upper.edge_zeta = w.hi;
    rep.upper.threshold = threshold_hi;
    const double ae = a.back(), be = b.back();
    if (ae <= tol) {
      rep.upper.passed = false;
      rep.upper.value = -std::numeric_limits<double>::infinity();
      rep.failures.push_back("positive slopes occur but the upper window "
                             "edge has vanishing slope");
    } else {
      rep.upper.value = w.hi - be * be / (2.0 * ae);
      rep.upper.passed = rep.upper.value >= threshold_hi;
      if (!rep.upper.passed)
        rep.failures.push_back("upper growth check failed");
    }
  }
  if (amin < -tol) {
    rep.lower.applicable = true;
    rep.lower.edge_zeta = w.lo;
    rep.lower.threshold = threshold_lo;
    const double ae = a.front(), be = b.front();
    if (ae >= -tol) {
      rep.lower.passed = false;
      rep.lower.value = std::numeric_limits<double>::infinity();
      rep.failures.push_back("negative slopes occur but the lower window "
                             "edge has vanishing slope");
    } else {
      rep.lower.value = w.lo - be * be / (2.0 * ae);
      rep.lower.passed = rep.lower.value <= threshold_lo;
      if (!rep.lower.passed)
        rep.failures.push_back("lower growth check failed");
    }
  }

  rep.passed = pairs_ok && rep.upper.passed && rep.lower.passed;
  return rep;
}

// ---------------------------------------------------- analytic profile

AnalyticProfile::AnalyticProfile(std::string name, Interval window, Fn A,
                                 Fn B, Fn dA, Fn dB)
    : name_(std::move(name)),
      a_(std::move(A)),
      b_(std::move(B)),
      da_(std::move(dA)),
      db_(std::move(dB)) {
  if (!(window.width() > 0.0))
    throw Error(errc::bad_input, "profile window must have positive width");
  window_ = window;
}

double AnalyticProfile::dA(double zeta) const {
  if (!da_) return LagrangianProfile::dA(zeta);
  return da_(zeta);
}
double AnalyticProfile::dB(double zeta) const {
  if (!db_) return LagrangianProfile::dB(zeta);
  return db_(zeta);
}

// ----------------------------------------------------- sampled profile

SampledProfile::SampledProfile(std::string name, std::vector<double> zeta,
                               std::vector<double> a, std::vector<double> b)
    : name_(std::move(name)),
      z_(std::move(zeta)),
      a_(std::move(a)),
      b_(std::move(b)) {
  const std::size_t n = z_.size();
  if (n < 4 || a_.size() != n || b_.size() != n)
    throw Error(errc::bad_input, "sampled profile needs >= 4 aligned rows");
  // Three-point slopes on a uniform-ish grid, one-sided at the ends.
  da_.resize(n);
  db_.resize(n);
  auto slope = [&](const std::vector<double>& v, std::size_t i) {
    if (i == 0) return (v[1] - v[0]) / (z_[1] - z_[0]);
    if (i == n - 1) return (v[n - 1] - v[n - 2]) / (z_[n - 1] - z_[n - 2]);
    const double hl = z_[i] - z_[i - 1], hr = z_[i + 1] - z_[i];
    // weighted central difference, exact for quadratics on nonuniform grids
    return (hl * (v[i + 1] - v[i]) / hr + hr * (v[i] - v[i - 1]) / hl) /
           (hl + hr);
  };
  for (std::size_t i = 0; i < n; ++i) {
    da_[i] = slope(a_, i);
    db_[i] = slope(b_, i);
  }
  finish(true);
}

SampledProfile::SampledProfile(std::string name, std::vector<double> zeta,
                               std::vector<double> a, std::vector<double> b,
                               std::vector<double> da, std::vector<double> db)
    : name_(std::move(name)),
      z_(std::move(zeta)),
      a_(std::move(a)),
      b_(std::move(b)),
      da_(std::move(da)),
      db_(std::move(db)) {
  const std::size_t n = z_.size();
  if (n < 4 || a_.size() != n || b_.size() != n || da_.size() != n ||
      db_.size() != n)
    throw Error(errc::bad_input, "sampled profile needs >= 4 aligned rows");
  finish(true);
}

void SampledProfile::finish(bool limit_a) {
  const std::size_t n = z_.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(z_[i + 1] > z_[i]))
      throw Error(errc::bad_input, "profile grid must be strictly increasing");
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(a_[i]) || !std::isfinite(b_[i]) ||
        !std::isfinite(da_[i]) || !std::isfinite(db_[i]))
      throw Error(errc::evaluation, "non-finite profile sample");
  if (limit_a) {
    // Fritsch-Carlson limiter: keeps the Hermite interpolant of A monotone
    // on every interval where the data is monotone.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double d = (a_[i + 1] - a_[i]) / (z_[i + 1] - z_[i]);
      if (d == 0.0) {
        da_[i] = 0.0;
        da_[i + 1] = 0.0;
        continue;
      }
      double al = da_[i] / d, be = da_[i + 1] / d;
      if (al < 0.0) da_[i] = 0.0, al = 0.0;
      if (be < 0.0) da_[i + 1] = 0.0, be = 0.0;
      const double r = al * al + be * be;
      if (r > 9.0) {
        const double s = 3.0 / std::sqrt(r);
        da_[i] = s * al * d;
        da_[i + 1] = s * be * d;
      }
    }
  }
  window_ = {z_.front(), z_.back()};
}

std::size_t SampledProfile::locate(double zeta) const {
  if (!window_.contains(zeta)) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "zeta=%g outside sampled window [%g, %g]",
                  zeta, window_.lo, window_.hi);
    throw Error(errc::out_of_window, msg);
  }
  const auto it = std::upper_bound(z_.begin(), z_.end(), zeta);
  std::size_t i = static_cast<std::size_t>(it - z_.begin());
  if (i > 0) --i;
  if (i + 1 >= z_.size()) i = z_.size() - 2;
  return i;
}

namespace {
inline double hermite(double z0, double z1, double v0, double v1, double m0,
                      double m1, double zeta) {
  const double h = z1 - z0, t = (zeta - z0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return v0 * (2 * t3 - 3 * t2 + 1) + h * m0 * (t3 - 2 * t2 + t) +
         v1 * (-2 * t3 + 3 * t2) + h * m1 * (t3 - t2);
}
inline double hermite_d(double z0, double z1, double v0, double v1, double m0,
                        double m1, double zeta) {
  const double h = z1 - z0, t = (zeta - z0) / h;
  const double t2 = t * t;
  return (v0 * (6 * t2 - 6 * t) + v1 * (-6 * t2 + 6 * t)) / h +
         m0 * (3 * t2 - 4 * t + 1) + m1 * (3 * t2 - 2 * t);
}
}  // namespace

double SampledProfile::A(double zeta) const {
  const std::size_t i = locate(zeta);
  return hermite(z_[i], z_[i + 1], a_[i], a_[i + 1], da_[i], da_[i + 1], zeta);
}
double SampledProfile::B(double zeta) const {
  const std::size_t i = locate(zeta);
  return hermite(z_[i], z_[i + 1], b_[i], b_[i + 1], db_[i], db_[i + 1], zeta);
}
void SampledProfile::AB(double zeta, double& a, double& b) const {
  const std::size_t i = locate(zeta);
  a = hermite(z_[i], z_[i + 1], a_[i], a_[i + 1], da_[i], da_[i + 1], zeta);
  b = hermite(z_[i], z_[i + 1], b_[i], b_[i + 1], db_[i], db_[i + 1], zeta);
}
double SampledProfile::dA(double zeta) const {
  const std::size_t i = locate(zeta);
  return hermite_d(z_[i], z_[i + 1], a_[i], a_[i + 1], da_[i], da_[i + 1],
                   zeta);
}
double SampledProfile::dB(double zeta) const {
  const std::size_t i = locate(zeta);
  return hermite_d(z_[i], z_[i + 1], b_[i], b_[i + 1], db_[i], db_[i + 1],
                   zeta);
}

// ----------------------------------------------------------- registry

namespace {
// Parse "name" or "name(param)".
bool parse_call(const std::string& s, std::string& name, double& param,
                bool& has_param) {
  const auto l = s.find('(');
  if (l == std::string::npos) {
    name = s;
    has_param = false;
    return true;
  }
  if (s.back() != ')') return false;
  name = s.substr(0, l);
  const std::string inner = s.substr(l + 1, s.size() - l - 2);
  try {
    std::size_t used = 0;
    param = std::stod(inner, &used);
    while (used < inner.size() && std::isspace(inner[used])) ++used;
    if (used != inner.size()) return false;
  } catch (...) {
    return false;
  }
  has_param = true;
  return true;
}
}  // namespace

std::shared_ptr<LagrangianProfile> make_profile(const std::string& text,
                                                Interval window) {
  std::string name;
  double param = 0.0;
  bool has_param = false;
  if (!parse_call(text, name, param, has_param))
    throw Error(errc::bad_input, "cannot parse profile name '" + text + "'");
  const bool default_window = !(window.width() > 0.0);

  if (name == "plane") {
    const double al = has_param ? param : 1.0;
    if (default_window) window = {-4.0, 4.0};
    return std::make_shared<AnalyticProfile>(
        text, window, [al](double) { return al; }, [](double) { return 0.0; },
        [](double) { return 0.0; }, [](double) { return 0.0; });
  }
  if (name == "ramp") {
    const double c = has_param ? param : 1.0;
    if (default_window) window = {-3.0, 3.0};
    return std::make_shared<AnalyticProfile>(
        text, window, [c](double z) { return c * z; },
        [](double) { return 0.0; }, [c](double) { return c; },
        [](double) { return 0.0; });
  }
  if (name == "cubic") {
    if (has_param)
      throw Error(errc::bad_input, "profile 'cubic' takes no parameter");
    if (default_window) window = {-24.0, 24.0};
    return std::make_shared<AnalyticProfile>(
        text, window, [](double z) { return 6.0 * std::cbrt(z); },
        [](double z) {
          const double c = std::cbrt(z);
          return -3.0 * c * c;
        },
        [](double z) {
          const double c = std::cbrt(z);
          return 2.0 / (c * c);
        },
        [](double z) { return -2.0 / std::cbrt(z); });
  }
  throw Error(errc::bad_input, "unknown profile '" + text +
                                   "' (expected plane(alpha), ramp(c), cubic, "
                                   "or a CSV path via custom)");
}

// ----------------------------------------------------------------- CSV

std::shared_ptr<SampledProfile> load_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::bad_input, "cannot open profile CSV " + path);
  std::string line;
  if (!std::getline(in, line))
    throw Error(errc::bad_input, "empty profile CSV " + path);
  auto strip = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
  };
  const std::string header = strip(line);
  bool with_slopes;
  if (header == "zeta,A,B")
    with_slopes = false;
  else if (header == "zeta,A,B,dA,dB")
    with_slopes = true;
  else
    throw Error(errc::bad_input,
                "profile CSV header must be 'zeta,A,B[,dA,dB]', got '" +
                    header + "'");
  std::vector<double> z, a, b, da, db;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty()) continue;
    std::istringstream row(s);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (...) {
        throw Error(errc::bad_input, path + ":" + std::to_string(lineno) +
                                         ": bad number '" + cell + "'");
      }
    }
    if (vals.size() != (with_slopes ? 5u : 3u))
      throw Error(errc::bad_input,
                  path + ":" + std::to_string(lineno) + ": wrong column count");
    z.push_back(vals[0]);
    a.push_back(vals[1]);
    b.push_back(vals[2]);
    if (with_slopes) {
      da.push_back(vals[3]);
      db.push_back(vals[4]);
    }
  }
  if (with_slopes)
    return std::make_shared<SampledProfile>("custom:" + path, std::move(z),
                                            std::move(a), std::move(b),
                                            std::move(da), std::move(db));
  return std::make_shared<SampledProfile>("custom:" + path, std::move(z),
                                          std::move(a), std::move(b));
}

void save_profile_csv(const SampledProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(errc::bad_input, "cannot write profile CSV " + path);
  out << "zeta,A,B,dA,dB\n";
  char buf[192];
  const auto& z = p.grid();
  for (std::size_t i = 0; i < z.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", z[i],
                  p.a_samples()[i], p.b_samples()[i], p.a_slopes()[i],
                  p.b_slopes()[i]);
    out << buf;
  }
}

}  // namespace heisvar
