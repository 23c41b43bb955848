#include <doctest.h>

#include <string>

#include "heisvar/config.hpp"

using namespace heisvar;

namespace {

std::string message_of(const std::string& text) {
  try {
    parse_config(text, "cfg.ini");
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("every section and key round-trips from text") {
  const char* text =
      "# full configuration\n"
      "[profile]\n"
      "name = ramp(2)\n"
      "csv = data/prof.csv\n"
      "window = -3 3\n"
      "mollify = 0.25\n"
      "mollify_quad = 32\n"
      "\n"
      "[domain]\n"
      "box = -1 1 -2 2   ; eta range then tau range\n"
      "cells = 48\n"
      "order = 6\n"
      "\n"
      "[fields]\n"
      "count = 7\n"
      "seed = 99\n"
      "align = off\n"
      "with_w = yes\n"
      "\n"
      "[variation]\n"
      "fd_h = 0.02\n"
      "tol_first = 2e-5\n"
      "tol_second = 3e-4\n"
      "tol_lagrangian = 5e-7\n"
      "tol_critical = 4e-6\n"
      "pde = no\n"
      "pde_h = 0.005\n"
      "pde_steps = 48\n"
      "\n"
      "[check]\n"
      "samples = 128\n"
      "tol = 1e-8\n"
      "threshold_hi = -5\n"
      "threshold_lo = 5\n"
      "\n"
      "[area]\n"
      "levels = 3\n"
      "\n"
      "[lift]\n"
      "leaves = 9\n"
      "samples = 33\n"
      "trange = -0.5 0.5\n"
      "mesh = true\n"
      "eps = 0.01\n"
      "contact_h = 2e-5\n"
      "contact_grid = 7\n"
      "\n"
      "[output]\n"
      "dir = out/run1\n";
  const ExperimentConfig c = parse_config(text, "cfg.ini");
  CHECK(c.profile_name == "ramp(2)");
  CHECK(c.profile_csv == "data/prof.csv");
  CHECK(c.profile_window.lo == -3.0);
  CHECK(c.profile_window.hi == 3.0);
  CHECK(c.mollify_eps == 0.25);
  CHECK(c.mollify_quad == 32);
  CHECK(c.box.eta0 == -1.0);
  CHECK(c.box.eta1 == 1.0);
  CHECK(c.box.tau0 == -2.0);
  CHECK(c.box.tau1 == 2.0);
  CHECK(c.cells == 48);
  CHECK(c.order == 6);
  CHECK(c.field_count == 7);
  CHECK(c.seed == 99);
  CHECK(c.align_supports == false);
  CHECK(c.with_w == true);
  CHECK(c.fd_h == 0.02);
  CHECK(c.tol_first == 2e-5);
  CHECK(c.tol_second == 3e-4);
  CHECK(c.tol_lagrangian == 5e-7);
  CHECK(c.tol_critical == 4e-6);
  CHECK(c.run_pde == false);
  CHECK(c.pde_h == 0.005);
  CHECK(c.pde_steps == 48);
  CHECK(c.check_samples == 128);
  CHECK(c.check_tol == 1e-8);
  CHECK(c.threshold_hi == -5.0);
  CHECK(c.threshold_lo == 5.0);
  CHECK(c.area_levels == 3);
  CHECK(c.lift_leaves == 9);
  CHECK(c.lift_samples == 33);
  CHECK(c.lift_trange.lo == -0.5);
  CHECK(c.lift_trange.hi == 0.5);
  CHECK(c.lift_mesh == true);
  CHECK(c.lift_eps == 0.01);
  CHECK(c.contact_h == 2e-5);
  CHECK(c.contact_grid == 7);
  CHECK(c.out_dir == "out/run1");
}

TEST_CASE("an empty config keeps the defaults") {
  const ExperimentConfig c = parse_config("");
  const ExperimentConfig d;
  CHECK(c.profile_name == d.profile_name);
  CHECK(c.cells == d.cells);
  CHECK(c.order == d.order);
  CHECK(c.field_count == d.field_count);
  CHECK(c.seed == d.seed);
  CHECK(c.out_dir == d.out_dir);
}

TEST_CASE("comments and blank lines are ignored") {
  const ExperimentConfig c = parse_config(
      "# leading comment\n"
      "\n"
      "[domain]\n"
      "; another comment style\n"
      "cells = 12  # trailing note\n"
      "\n");
  CHECK(c.cells == 12);
}

TEST_CASE("unknown sections and keys are reported with a location") {
  const std::string m1 = message_of("[domian]\ncells = 4\n");
  CHECK(m1.find("cfg.ini:1") != std::string::npos);
  const std::string m2 = message_of("[domain]\ncelz = 4\n");
  CHECK(m2.find("cfg.ini:2") != std::string::npos);
  CHECK(m2.find("celz") != std::string::npos);
}

TEST_CASE("keys outside any section are rejected") {
  CHECK_THROWS_AS(parse_config("cells = 4\n"), Error);
}

TEST_CASE("malformed values are rejected with a location") {
  CHECK(message_of("[domain]\ncells = four\n").find(":2") !=
        std::string::npos);
  CHECK(message_of("[domain]\nbox = 1 2 3\n").find(":2") !=
        std::string::npos);  // needs four numbers
  CHECK(message_of("[profile]\nwindow = 1\n").find(":2") !=
        std::string::npos);  // needs two numbers
  CHECK(message_of("[fields]\nalign = maybe\n").find(":2") !=
        std::string::npos);
  CHECK(message_of("[fields]\nseed = -5\n").find(":2") !=
        std::string::npos);  // seeds are plain unsigned integers
  CHECK(message_of("[variation]\nfd_h = 1e\n").find(":2") !=
        std::string::npos);
}

TEST_CASE("out-of-range settings are rejected") {
  CHECK_THROWS_AS(parse_config("[domain]\ncells = 0\n"), Error);
  CHECK_THROWS_AS(parse_config("[domain]\norder = 100\n"), Error);
  CHECK_THROWS_AS(parse_config("[area]\nlevels = 9\n"), Error);
  CHECK_THROWS_AS(parse_config("[lift]\nsamples = 2\n"), Error);
  CHECK_THROWS_AS(parse_config("[lift]\ncontact_grid = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("[variation]\nfd_h = 0\n"), Error);
  CHECK_THROWS_AS(parse_config("[profile]\nmollify = -0.1\n"), Error);
}

TEST_CASE("missing config files are reported") {
  CHECK_THROWS_AS(load_config("/no/such/dir/config.ini"), Error);
}
