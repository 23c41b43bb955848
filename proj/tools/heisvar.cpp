// Command-line driver: admissibility checks, graph area tables, contact
// variation experiments, group lifts, and profile smoothing.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heisvar/experiments.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string profile;
  std::string out;
  std::vector<double> box;
  int cells = -1;
  int order = -1;
  int count = -1;
  long long seed = -1;
  double mollify = -1.0;
};

heisvar::ExperimentConfig assemble(const Overrides& o) {
  heisvar::ExperimentConfig cfg;
  if (!o.config.empty()) cfg = heisvar::load_config(o.config);
  if (!o.profile.empty()) {
    cfg.profile_name = o.profile;
    cfg.profile_csv.clear();
  }
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (!o.box.empty())
    cfg.box = {o.box[0], o.box[1], o.box[2], o.box[3]};
  if (!(cfg.box.eta0 < cfg.box.eta1) || !(cfg.box.tau0 < cfg.box.tau1))
    throw heisvar::Error(heisvar::errc::bad_input,
                         "--box needs increasing coordinate pairs");
  if (o.cells >= 0) cfg.cells = o.cells;
  if (o.order >= 0) cfg.order = o.order;
  if (o.count >= 0) cfg.field_count = o.count;
  if (o.seed >= 0) cfg.seed = static_cast<unsigned long long>(o.seed);
  if (o.mollify >= 0.0) cfg.mollify_eps = o.mollify;
  return cfg;
}

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config, "INI config file");
  sub->add_option("-p,--profile", o.profile,
                  "profile name: plane(alpha), ramp(c), cubic, graph:eta_tau");
  sub->add_option("--box", o.box, "domain box: eta0 eta1 tau0 tau1")
      ->expected(4);
  sub->add_option("--cells", o.cells, "quadrature cells per dimension");
  sub->add_option("--order", o.order, "Gauss-Legendre points per cell");
  sub->add_option("--seed", o.seed, "seed for the random test fields");
  sub->add_option("--count", o.count, "number of random test fields");
  sub->add_option("--mollify", o.mollify, "smoothing radius (0 = off)");
  sub->add_option("-o,--out", o.out, "output directory for reports");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrinsic graphs from parabola foliations: area, contact "
               "variations, and group lifts"};
  app.require_subcommand(1);

  Overrides o;
  CLI::App* check =
      app.add_subcommand("check", "admissibility of a profile");
  CLI::App* area =
      app.add_subcommand("area", "graph area under mesh refinement");
  CLI::App* variation = app.add_subcommand(
      "variation", "first/second contact variation vs finite differences");
  CLI::App* lift = app.add_subcommand(
      "lift", "lift leaves and graphs into the group; contact diagnostics");
  CLI::App* mollify =
      app.add_subcommand("mollify", "smooth a profile and re-check it");
  for (CLI::App* sub : {check, area, variation, lift, mollify})
    add_common(sub, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 2;
  }

  try {
    heisvar::ExperimentConfig cfg = assemble(o);
    if (check->parsed()) return heisvar::cmd_check(cfg);
    if (area->parsed()) return heisvar::cmd_area(cfg);
    if (variation->parsed()) return heisvar::cmd_variation(cfg);
    if (lift->parsed()) return heisvar::cmd_lift(cfg);
    if (mollify->parsed()) return heisvar::cmd_mollify(cfg);
    std::fprintf(stderr, "no subcommand selected\n");
    return 2;
  } catch (const heisvar::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return heisvar::exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
