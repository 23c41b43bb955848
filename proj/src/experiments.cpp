#include "heisvar/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <sstream>
#include <vector>

#include "heisvar/area.hpp"
#include "heisvar/heisenberg.hpp"
#include "heisvar/variation.hpp"

namespace heisvar {

namespace {

// Stability floor for the second-variation sign check: the quadratic form
// may be a tiny negative number through rounding alone.
constexpr double kStabilityFloor = 1e-8;

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

std::shared_ptr<const IntrinsicFunction> make_graph_control(
    const std::string& name) {
  if (name == "graph:eta_tau") {
    auto field = std::make_shared<AnalyticField>([](double eta, double tau) {
      Jet2 j;
      j.v = eta * tau;
      j.de = tau;
      j.dt = eta;
      j.det = 1.0;
      return j;
    });
    return std::make_shared<GridFunction>(field, name);
  }
  throw Error(errc::bad_input,
              "unknown graph control '" + name + "' (try graph:eta_tau)");
}

void ensure_out_dir(const ExperimentConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec)
    throw Error(errc::bad_input,
                "cannot create output directory '" + cfg.out_dir + "'");
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

void print_admissibility(const AdmissibilityReport& rep) {
  std::printf("  samples: %d, pair tolerance: %g\n", rep.n_samples, rep.tol);
  std::printf("  worst separation margin: %.6g at zeta = %.6g, %.6g\n",
              rep.worst_pair.margin, rep.worst_pair.zeta1,
              rep.worst_pair.zeta2);
  std::printf("  tied-slope pairs: %ld (largest offset gap %.3g)\n",
              rep.n_tied, rep.worst_tie);
  auto growth = [](const char* which, const GrowthCheck& g) {
    if (!g.applicable) {
      std::printf("  %s growth check: not applicable\n", which);
      return;
    }
    std::printf("  %s growth check at zeta = %g: value %.6g vs threshold %g "
                "-> %s\n",
                which, g.edge_zeta, g.value, g.threshold,
                g.passed ? "ok" : "FAIL");
  };
  growth("upper", rep.upper);
  growth("lower", rep.lower);
  for (const auto& f : rep.failures) std::printf("  failure: %s\n", f.c_str());
}

}  // namespace

int exit_code_for(const Error& e) {
  return e.code == errc::bad_input ? 2 : 3;
}

BuiltFunction build_function(const ExperimentConfig& cfg) {
  BuiltFunction out;
  if (cfg.profile_name.rfind("graph:", 0) == 0) {
    if (!cfg.profile_csv.empty() || cfg.mollify_eps > 0.0)
      throw Error(errc::bad_input,
                  "graph controls take neither a CSV nor mollification");
    out.fn = make_graph_control(cfg.profile_name);
    out.name = cfg.profile_name;
    return out;
  }

  std::shared_ptr<const LagrangianProfile> prof;
  if (!cfg.profile_csv.empty())
    prof = load_profile_csv(cfg.profile_csv);
  else
    prof = make_profile(cfg.profile_name, cfg.profile_window);

  if (cfg.mollify_eps > 0.0)
    prof = std::make_shared<SampledProfile>(
        mollify(*prof, cfg.mollify_eps, cfg.mollify_quad));

  out.profile = prof;
  out.fn = std::make_shared<FoliationFunction>(prof);
  out.name = prof->describe();
  return out;
}

int cmd_check(const ExperimentConfig& cfg) {
  BuiltFunction b = build_function(cfg);
  if (!b.profile)
    throw Error(errc::bad_input,
                "admissibility applies to foliation profiles, not graph "
                "controls");
  std::printf("profile %s on window [%g, %g]\n", b.name.c_str(),
              b.profile->window().lo, b.profile->window().hi);
  AdmissibilityReport rep =
      check_admissibility(*b.profile, cfg.check_samples, cfg.check_tol,
                          cfg.threshold_hi, cfg.threshold_lo);
  print_admissibility(rep);
  std::printf("admissibility: %s\n", rep.passed ? "PASS" : "FAIL");
  return rep.passed ? 0 : 1;
}

int cmd_area(const ExperimentConfig& cfg) {
  BuiltFunction b = build_function(cfg);
  ensure_out_dir(cfg);
  AreaReport rep;
  rep.profile = b.name;
  rep.box = cfg.box;
  rep.order = cfg.order;
  std::printf("graph area of %s over [%g, %g] x [%g, %g], order %d\n",
              b.name.c_str(), cfg.box.eta0, cfg.box.eta1, cfg.box.tau0,
              cfg.box.tau1, cfg.order);
  const auto t0 = std::chrono::steady_clock::now();
  for (int lvl = 0; lvl < cfg.area_levels; ++lvl) {
    const int cells = cfg.cells << lvl;
    QuadratureDomain D(cfg.box, cells, cfg.order);
    const double v = intrinsic_area(*b.fn, D);
    rep.levels.push_back({cells, v});
    std::printf("  cells %5d: %.17g\n", cells, v);
  }
  if (rep.levels.size() >= 3) {
    const auto& L = rep.levels;
    const std::size_t n = L.size();
    const double d1 = L[n - 2].value - L[n - 3].value;
    const double d2 = L[n - 1].value - L[n - 2].value;
    const double scale = std::max(1.0, std::abs(L[n - 1].value));
    if (std::abs(d2) > 1e-15 * scale && std::abs(d1) > std::abs(d2)) {
      rep.has_rate = true;
      rep.rate = std::log2(std::abs(d1) / std::abs(d2));
      std::printf("  observed convergence rate: %.2f\n", rep.rate);
    } else {
      std::printf("  refinement differences at rounding level; no rate\n");
    }
  }
  std::printf("  elapsed: %.0f ms\n", elapsed_ms(t0));
  write_text_file(out_path(cfg, "area.json"), area_to_json(rep));
  write_text_file(out_path(cfg, "area.csv"), area_to_csv(rep));
  std::printf("wrote %s and %s\n", out_path(cfg, "area.json").c_str(),
              out_path(cfg, "area.csv").c_str());
  return 0;
}

VariationReport run_variation(const ExperimentConfig& cfg) {
  BuiltFunction b = build_function(cfg);
  VariationReport rep;
  rep.profile = b.name;
  rep.box = cfg.box;
  rep.cells = cfg.cells;
  rep.order = cfg.order;
  rep.seed = cfg.seed;
  rep.aligned = cfg.align_supports;
  rep.fd_h = cfg.fd_h;
  rep.tol_critical = cfg.tol_critical;
  rep.tol_first = cfg.tol_first;
  rep.tol_second = cfg.tol_second;
  rep.tol_lagrangian = cfg.tol_lagrangian;

  if (b.profile) {
    AdmissibilityReport adm =
        check_admissibility(*b.profile, cfg.check_samples, cfg.check_tol,
                            cfg.threshold_hi, cfg.threshold_lo);
    if (!adm.passed) {
      std::printf("profile %s failed its admissibility check:\n",
                  b.name.c_str());
      print_admissibility(adm);
      rep.all_ok = false;
      return rep;
    }
  }

  QuadratureDomain D(cfg.box, cfg.cells, cfg.order);
  const bool leaves = b.fn->exact_leaves();
  ResolvedDomain R = resolve_domain(*b.fn, D, /*with_dtau_psi=*/leaves);
  rep.area = intrinsic_area(R);

  const double h = cfg.fd_h;
  bool all_ok = true;
  for (int i = 0; i < cfg.field_count; ++i) {
    TestField tf = random_field(cfg.seed + static_cast<std::uint64_t>(i),
                                cfg.box, cfg.cells, cfg.with_w,
                                cfg.align_supports);
    DiffeoFamily fam{tf};
    FieldReport fr;
    fr.index = i;
    fr.first_analytic = first_variation(fam, R);
    fr.second_analytic = second_variation(fam, R);

    std::vector<std::pair<double, double>> samples;
    for (double e : {-h, -0.5 * h, 0.0, 0.5 * h, h})
      samples.emplace_back(e, deformed_area(fam, e, R));
    FdDerivatives fd = fd_derivatives(samples);
    fr.first_fd = fd.first;
    fr.first_fd_err = fd.err_first;
    fr.second_fd = fd.second;
    fr.second_fd_err = fd.err_second;

    if (leaves) {
      fr.has_lagrangian = true;
      LagrangianSecond ls = second_variation_lagrangian(fam, R);
      fr.lagr_graph = ls.graph_term;
      fr.lagr_leaf = ls.leaf_term;
    }

    const double area = rep.area;
    auto scale = [&](double a, double c) {
      return std::max({std::abs(a), std::abs(c), area});
    };
    fr.first_ok = std::abs(fr.first_analytic) <= cfg.tol_critical * area;
    fr.second_ok = fr.second_analytic >= -kStabilityFloor * area;
    fr.match_first_ok = std::abs(fr.first_analytic - fr.first_fd) <=
                        cfg.tol_first * scale(fr.first_analytic, fr.first_fd);
    fr.match_second_ok =
        std::abs(fr.second_analytic - fr.second_fd) <=
        cfg.tol_second * scale(fr.second_analytic, fr.second_fd);
    fr.lagr_ok = true;
    if (fr.has_lagrangian) {
      const double tot = fr.lagr_graph + fr.lagr_leaf;
      fr.lagr_ok = std::abs(fr.second_analytic - tot) <=
                   cfg.tol_lagrangian * scale(fr.second_analytic, tot);
    }
    all_ok = all_ok && fr.first_ok && fr.second_ok && fr.match_first_ok &&
             fr.match_second_ok && fr.lagr_ok;
    rep.fields.push_back(fr);
  }

  if (cfg.run_pde) {
    // The residual is a sup over samples; a coarse node set is plenty.
    QuadratureDomain Dp(cfg.box, std::min(cfg.cells, 16),
                        std::min(cfg.order, 4));
    rep.has_pde = true;
    rep.pde_residual =
        minimal_pde_residual(*b.fn, Dp, cfg.pde_h, cfg.pde_steps);
  }

  rep.all_ok = all_ok;
  return rep;
}

int cmd_variation(const ExperimentConfig& cfg) {
  ensure_out_dir(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  VariationReport rep = run_variation(cfg);
  std::printf("graph %s over [%g, %g] x [%g, %g], %d cells, order %d, "
              "seed %llu\n",
              rep.profile.c_str(), rep.box.eta0, rep.box.eta1, rep.box.tau0,
              rep.box.tau1, rep.cells, rep.order,
              static_cast<unsigned long long>(rep.seed));
  if (rep.fields.empty() && !rep.all_ok) return 1;  // admissibility failed
  std::printf("area = %.17g\n", rep.area);
  for (const auto& f : rep.fields) {
    std::printf("field %2d: dA  = % .3e (fd % .3e +- %.1e)%s%s\n", f.index,
                f.first_analytic, f.first_fd, f.first_fd_err,
                f.first_ok ? "" : "  [NOT CRITICAL]",
                f.match_first_ok ? "" : "  [FD MISMATCH]");
    std::printf("          d2A = % .3e (fd % .3e +- %.1e)%s%s\n",
                f.second_analytic, f.second_fd, f.second_fd_err,
                f.second_ok ? "" : "  [UNSTABLE]",
                f.match_second_ok ? "" : "  [FD MISMATCH]");
    if (f.has_lagrangian)
      std::printf("          leaf-form = % .3e (graph % .3e + leaf % .3e)%s\n",
                  f.lagr_graph + f.lagr_leaf, f.lagr_graph, f.lagr_leaf,
                  f.lagr_ok ? "" : "  [FORM MISMATCH]");
  }
  if (rep.has_pde)
    std::printf("minimal-surface residual (sup over nodes): %.3e\n",
                rep.pde_residual);
  std::printf("elapsed: %.0f ms\n", elapsed_ms(t0));
  write_text_file(out_path(cfg, "variation.json"), variation_to_json(rep));
  write_text_file(out_path(cfg, "variation.csv"), variation_to_csv(rep));
  std::printf("wrote %s and %s\n", out_path(cfg, "variation.json").c_str(),
              out_path(cfg, "variation.csv").c_str());
  std::printf("RESULT: %s\n", rep.all_ok ? "PASS" : "FAIL");
  return rep.all_ok ? 0 : 1;
}

int cmd_lift(const ExperimentConfig& cfg) {
  BuiltFunction b = build_function(cfg);
  ensure_out_dir(cfg);
  const Box& box = cfg.box;
  const double eta0 = 0.5 * (box.eta0 + box.eta1);
  const int n = cfg.lift_samples - 1;

  std::ostringstream csv;
  csv << "leaf,t,eta,tau,x,y,z\n";
  char row[256];
  double worst_straight = 0.0, worst_horiz = 0.0;
  bool any_truncated = false;
  for (int j = 0; j < cfg.lift_leaves; ++j) {
    const double tau =
        box.tau0 + box.tau_len() * (j + 1) / (cfg.lift_leaves + 1);
    Curve2 c = b.fn->curve(eta0, tau, cfg.lift_trange.lo, cfg.lift_trange.hi,
                           n);
    Curve3 lc = lift_curve(*b.fn, c);
    any_truncated = any_truncated || lc.truncated;
    for (std::size_t k = 0; k < lc.t.size(); ++k) {
      std::snprintf(row, sizeof row,
                    "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", j, lc.t[k],
                    c.eta[k], c.tau[k], lc.x[k], lc.y[k], lc.z[k]);
      csv << row;
    }
    if (b.fn->exact_leaves() && lc.t.size() >= 3) {
      // Lifted leaves of a foliation are group lines: second differences
      // of the coordinates vanish.
      for (std::size_t k = 1; k + 1 < lc.t.size(); ++k) {
        const double sx = std::abs(lc.x[k + 1] - 2 * lc.x[k] + lc.x[k - 1]);
        const double sy = std::abs(lc.y[k + 1] - 2 * lc.y[k] + lc.y[k - 1]);
        const double sz = std::abs(lc.z[k + 1] - 2 * lc.z[k] + lc.z[k - 1]);
        worst_straight = std::max({worst_straight, sx, sy, sz});
      }
    }
    worst_horiz = std::max(worst_horiz, horizontality_defect(lc));
  }
  write_text_file(out_path(cfg, "leaves.csv"), csv.str());
  std::printf("lifted %d integral curves of %s (wrote %s)%s\n",
              cfg.lift_leaves, b.name.c_str(),
              out_path(cfg, "leaves.csv").c_str(),
              any_truncated ? " [some truncated at the window]" : "");
  if (b.fn->exact_leaves())
    std::printf("  max second difference along lifted leaves: %.3e\n",
                worst_straight);
  std::printf("  max horizontality defect along lifts: %.3e\n", worst_horiz);

  // Control: a vertical segment is as non-horizontal as it gets.
  Curve3 vert;
  for (int k = 0; k <= 16; ++k) {
    const double t = -1.0 + 2.0 * k / 16.0;
    vert.t.push_back(t);
    vert.x.push_back(0.0);
    vert.y.push_back(0.0);
    vert.z.push_back(t);
  }
  std::printf("  vertical-segment control defect: %.3e\n",
              horizontality_defect(vert));

  if (cfg.lift_mesh) {
    std::ostringstream obj;
    const int m = cfg.lift_samples;
    char vrow[160];
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double eta = box.eta0 + box.eta_len() * i / (m - 1);
        const double tau = box.tau0 + box.tau_len() * j / (m - 1);
        HPoint p = lift_graph(*b.fn, eta, tau);
        std::snprintf(vrow, sizeof vrow, "v %.17g %.17g %.17g\n", p.x, p.y,
                      p.z);
        obj << vrow;
      }
    for (int i = 0; i + 1 < m; ++i)
      for (int j = 0; j + 1 < m; ++j) {
        const int a = i * m + j + 1, bb = a + 1, c = a + m, d = c + 1;
        obj << "f " << a << ' ' << bb << ' ' << d << '\n';
        obj << "f " << a << ' ' << d << ' ' << c << '\n';
      }
    write_text_file(out_path(cfg, "graph.obj"), obj.str());
    std::printf("  wrote %s (%d x %d vertices)\n",
                out_path(cfg, "graph.obj").c_str(), cfg.lift_samples,
                cfg.lift_samples);
  }

  // Contact diagnostics of the lifted deformation at eps = lift_eps,
  // sampled over the box with the transverse coordinate in [-1, 1].
  TestField tf = random_field(cfg.seed, box, std::max(cfg.cells, 16),
                              cfg.with_w, cfg.align_supports);
  DiffeoFamily fam{tf};
  FamilyMap map(fam, cfg.lift_eps);
  std::vector<HPoint> samples;
  const int g = cfg.contact_grid;
  for (int a = 0; a < g; ++a)
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        samples.push_back({-1.0 + 2.0 * a / (g - 1),
                           box.eta0 + box.eta_len() * i / (g - 1),
                           box.tau0 + box.tau_len() * j / (g - 1),
                           Chart::SecondKind});
  auto lifted = [&](const HPoint& q) { return contact_lift(map, q); };
  ContactReport cr = contact_defect(lifted, samples, cfg.contact_h);
  std::printf("contact lift of the deformation at eps = %g:\n", cfg.lift_eps);
  std::printf("  frame defect %.3e, transversality defect %.3e\n",
              cr.frame_defect, cr.parallel_defect);

  auto sheared = [&](const HPoint& q) {
    HPoint p = q;
    p.z = q.z + q.x * q.x;  // breaks the contact structure
    return p;
  };
  ContactReport cs = contact_defect(sheared, samples, cfg.contact_h);
  std::printf("  non-contact control frame defect: %.3e\n", cs.frame_defect);
  return 0;
}

int cmd_mollify(const ExperimentConfig& cfg) {
  if (!(cfg.mollify_eps > 0.0))
    throw Error(errc::bad_input, "mollify needs [profile] mollify > 0");
  ExperimentConfig base_cfg = cfg;
  base_cfg.mollify_eps = 0.0;
  BuiltFunction base = build_function(base_cfg);
  if (!base.profile)
    throw Error(errc::bad_input, "mollify applies to foliation profiles");
  ensure_out_dir(cfg);

  SampledProfile sm = mollify(*base.profile, cfg.mollify_eps,
                              cfg.mollify_quad);
  const std::string path = out_path(cfg, "mollified.csv");
  save_profile_csv(sm, path);

  double supA = 0.0, supB = 0.0;
  const Interval w = sm.window();
  const int ns = 401;
  for (int i = 0; i < ns; ++i) {
    const double z = w.lo + w.width() * i / (ns - 1);
    supA = std::max(supA, std::abs(sm.A(z) - base.profile->A(z)));
    supB = std::max(supB, std::abs(sm.B(z) - base.profile->B(z)));
  }
  std::printf("mollified %s with radius %g (%zu samples, window [%g, %g])\n",
              base.name.c_str(), cfg.mollify_eps, sm.grid().size(), w.lo,
              w.hi);
  std::printf("  sup |A_eps - A| = %.6g, sup |B_eps - B| = %.6g\n", supA,
              supB);
  std::printf("  wrote %s\n", path.c_str());

  AdmissibilityReport rep =
      check_admissibility(sm, cfg.check_samples, cfg.check_tol,
                          cfg.threshold_hi, cfg.threshold_lo);
  print_admissibility(rep);
  std::printf("admissibility of the mollified profile: %s\n",
              rep.passed ? "PASS" : "FAIL");
  return rep.passed ? 0 : 1;
}

}  // namespace heisvar
