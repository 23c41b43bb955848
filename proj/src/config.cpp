#include "heisvar/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace heisvar {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw Error(errc::bad_input,
              origin + ":" + std::to_string(line) + ": " + msg);
}

std::vector<double> parse_numbers(const std::string& origin, int line,
                                  const std::string& value, size_t expect) {
  std::string s = value;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  std::string rest;
  if (in.clear(), in >> rest)
    fail(origin, line, "trailing junk in numeric value '" + value + "'");
  if (out.size() != expect)
    fail(origin, line, "expected " + std::to_string(expect) + " number(s), got " +
                           std::to_string(out.size()) + " in '" + value + "'");
  return out;
}

double parse_double(const std::string& origin, int line, const std::string& value) {
  return parse_numbers(origin, line, value, 1)[0];
}

int parse_int(const std::string& origin, int line, const std::string& value) {
  double v = parse_double(origin, line, value);
  int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    fail(origin, line, "expected an integer, got '" + value + "'");
  return i;
}

unsigned long long parse_seed(const std::string& origin, int line, const std::string& value) {
  std::string t = trim(value);
  if (t.empty() || t[0] == '-' || t[0] == '+')
    fail(origin, line, "seed must be a plain unsigned integer");
  char* end = nullptr;
  unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end == nullptr || *end != '\0')
    fail(origin, line, "expected an unsigned integer seed, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& origin, int line, const std::string& value) {
  std::string t = trim(value);
  if (t == "true" || t == "on" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "off" || t == "no" || t == "0") return false;
  fail(origin, line, "expected a boolean (true/false), got '" + value + "'");
}

Interval parse_interval(const std::string& origin, int line, const std::string& value) {
  auto v = parse_numbers(origin, line, value, 2);
  if (!(v[0] < v[1])) fail(origin, line, "interval endpoints must be increasing");
  return Interval{v[0], v[1]};
}

Box parse_box(const std::string& origin, int line, const std::string& value) {
  auto v = parse_numbers(origin, line, value, 4);
  if (!(v[0] < v[1]) || !(v[2] < v[3]))
    fail(origin, line, "box must be 'eta0 eta1 tau0 tau1' with increasing pairs");
  return Box{v[0], v[1], v[2], v[3]};
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    size_t hash = s.find_first_of("#;");
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(origin, line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "profile" && section != "domain" && section != "fields" &&
          section != "variation" && section != "check" && section != "area" &&
          section != "lift" && section != "output")
        fail(origin, line, "unknown section [" + section + "]");
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(origin, line, "empty key");
    if (value.empty()) fail(origin, line, "empty value for key '" + key + "'");
    if (section.empty()) fail(origin, line, "key '" + key + "' outside any section");

    if (section == "profile") {
      if (key == "name") cfg.profile_name = value;
      else if (key == "csv") cfg.profile_csv = value;
      else if (key == "window") cfg.profile_window = parse_interval(origin, line, value);
      else if (key == "mollify") cfg.mollify_eps = parse_double(origin, line, value);
      else if (key == "mollify_quad") cfg.mollify_quad = parse_int(origin, line, value);
      else fail(origin, line, "unknown key '" + key + "' in [profile]");
    } else if (section == "domain") {
      if (key == "box") cfg.box = parse_box(origin, line, value);
      else if (key == "cells") cfg.cells = parse_int(origin, line, value);
      else if (key == "order") cfg.order = parse_int(origin, line, value);
      else fail(origin, line, "unknown key '" + key + "' in [domain]");
    } else if (section == "fields") {
      if (key == "count") cfg.field_count = parse_int(origin, line, value);
      else if (key == "seed") cfg.seed = parse_seed(origin, line, value);
      else if (key == "align") cfg.align_supports = parse_bool(origin, line, value);
      else if (key == "with_w") cfg.with_w = parse_bool(origin, line, value);
      else fail(origin, line, "unknown key '" + key + "' in [fields]");
    } else if (section == "variation") {
      if (key == "fd_h") cfg.fd_h = parse_double(origin, line, value);
      else if (key == "tol_first") cfg.tol_first = parse_double(origin, line, value);
      else if (key == "tol_second") cfg.tol_second = parse_double(origin, line, value);
      else if (key == "tol_lagrangian") cfg.tol_lagrangian = parse_double(origin, line, value);
      else if (key == "tol_critical") cfg.tol_critical = parse_double(origin, line, value);
      else if (key == "pde") cfg.run_pde = parse_bool(origin, line, value);
      else if (key == "pde_h") cfg.pde_h = parse_double(origin, line, value);
      else if (key == "pde_steps") cfg.pde_steps = parse_int(origin, line, value);
      else fail(origin, line, "unknown key '" + key + "' in [variation]");
    } else if (section == "check") {
      if (key == "samples") cfg.check_samples = parse_int(origin, line, value);
      else if (key == "tol") cfg.check_tol = parse_double(origin, line, value);
      else if (key == "threshold_hi") cfg.threshold_hi = parse_double(origin, line, value);
      else if (key == "threshold_lo") cfg.threshold_lo = parse_double(origin, line, value);
      else fail(origin, line, "unknown key '" + key + "' in [check]");
    } else if (section == "area") {
      if (key == "levels") cfg.area_levels = parse_int(origin, line, value);
      else fail(origin, line, "unknown key '" + key + "' in [area]");
    } else if (section == "lift") {
      if (key == "leaves") cfg.lift_leaves = parse_int(origin, line, value);
      else if (key == "samples") cfg.lift_samples = parse_int(origin, line, value);
      else if (key == "trange") cfg.lift_trange = parse_interval(origin, line, value);
      else if (key == "mesh") cfg.lift_mesh = parse_bool(origin, line, value);
      else if (key == "eps") cfg.lift_eps = parse_double(origin, line, value);
      else if (key == "contact_h") cfg.contact_h = parse_double(origin, line, value);
      else if (key == "contact_grid") cfg.contact_grid = parse_int(origin, line, value);
      else fail(origin, line, "unknown key '" + key + "' in [lift]");
    } else if (section == "output") {
      if (key == "dir") cfg.out_dir = value;
      else fail(origin, line, "unknown key '" + key + "' in [output]");
    }
  }

  if (cfg.cells < 1) throw Error(errc::bad_input, origin + ": [domain] cells must be >= 1");
  if (cfg.order < 1 || cfg.order > 64)
    throw Error(errc::bad_input, origin + ": [domain] order must be in [1, 64]");
  if (cfg.field_count < 0) throw Error(errc::bad_input, origin + ": [fields] count must be >= 0");
  if (cfg.mollify_eps < 0.0)
    throw Error(errc::bad_input, origin + ": [profile] mollify must be >= 0");
  if (cfg.fd_h <= 0.0) throw Error(errc::bad_input, origin + ": [variation] fd_h must be > 0");
  if (cfg.area_levels < 1 || cfg.area_levels > 8)
    throw Error(errc::bad_input, origin + ": [area] levels must be in [1, 8]");
  if (cfg.lift_samples < 3)
    throw Error(errc::bad_input, origin + ": [lift] samples must be >= 3");
  if (cfg.contact_grid < 2)
    throw Error(errc::bad_input, origin + ": [lift] contact_grid must be >= 2");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::bad_input, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace heisvar
