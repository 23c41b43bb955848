#include "heisvar/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace heisvar {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json box_json(const Box& b) {
  return ordered_json{{"eta0", b.eta0}, {"eta1", b.eta1}, {"tau0", b.tau0}, {"tau1", b.tau1}};
}

}  // namespace

std::string variation_to_json(const VariationReport& r) {
  ordered_json j;
  j["experiment"] = "variation";
  j["profile"] = r.profile;
  j["domain"] = box_json(r.box);
  j["cells"] = r.cells;
  j["order"] = r.order;
  j["seed"] = r.seed;
  j["aligned_supports"] = r.aligned;
  j["fd_h"] = r.fd_h;
  j["area"] = r.area;
  j["tolerances"] = ordered_json{{"critical", r.tol_critical},
                                 {"match_first", r.tol_first},
                                 {"match_second", r.tol_second},
                                 {"lagrangian", r.tol_lagrangian}};
  if (r.has_pde) j["pde_residual"] = r.pde_residual;
  ordered_json fields = ordered_json::array();
  for (const auto& f : r.fields) {
    ordered_json e;
    e["index"] = f.index;
    e["first_analytic"] = f.first_analytic;
    e["first_fd"] = f.first_fd;
    e["first_fd_err"] = f.first_fd_err;
    e["second_analytic"] = f.second_analytic;
    e["second_fd"] = f.second_fd;
    e["second_fd_err"] = f.second_fd_err;
    if (f.has_lagrangian) {
      e["leaf_form_graph_term"] = f.lagr_graph;
      e["leaf_form_leaf_term"] = f.lagr_leaf;
      e["leaf_form_total"] = f.lagr_graph + f.lagr_leaf;
    }
    e["first_ok"] = f.first_ok;
    e["second_ok"] = f.second_ok;
    e["match_first_ok"] = f.match_first_ok;
    e["match_second_ok"] = f.match_second_ok;
    e["lagrangian_ok"] = f.lagr_ok;
    fields.push_back(std::move(e));
  }
  j["fields"] = std::move(fields);
  j["all_ok"] = r.all_ok;
  return j.dump(2) + "\n";
}

std::string variation_to_csv(const VariationReport& r) {
  std::ostringstream out;
  out << "index,first_analytic,first_fd,first_fd_err,second_analytic,second_fd,"
         "second_fd_err,leaf_form_graph_term,leaf_form_leaf_term,first_ok,second_ok,"
         "match_first_ok,match_second_ok,lagrangian_ok\n";
  for (const auto& f : r.fields) {
    out << f.index << ',' << fmt(f.first_analytic) << ',' << fmt(f.first_fd) << ','
        << fmt(f.first_fd_err) << ',' << fmt(f.second_analytic) << ',' << fmt(f.second_fd)
        << ',' << fmt(f.second_fd_err) << ',';
    if (f.has_lagrangian)
      out << fmt(f.lagr_graph) << ',' << fmt(f.lagr_leaf) << ',';
    else
      out << ",,";
    out << (f.first_ok ? 1 : 0) << ',' << (f.second_ok ? 1 : 0) << ','
        << (f.match_first_ok ? 1 : 0) << ',' << (f.match_second_ok ? 1 : 0) << ','
        << (f.lagr_ok ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string area_to_json(const AreaReport& r) {
  ordered_json j;
  j["experiment"] = "area";
  j["profile"] = r.profile;
  j["domain"] = box_json(r.box);
  j["order"] = r.order;
  ordered_json levels = ordered_json::array();
  for (const auto& l : r.levels)
    levels.push_back(ordered_json{{"cells", l.cells}, {"value", l.value}});
  j["levels"] = std::move(levels);
  if (r.has_rate) j["observed_rate"] = r.rate;
  return j.dump(2) + "\n";
}

std::string area_to_csv(const AreaReport& r) {
  std::ostringstream out;
  out << "cells,value\n";
  for (const auto& l : r.levels) out << l.cells << ',' << fmt(l.value) << '\n';
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::bad_input, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(errc::bad_input, "failed writing '" + path + "'");
}

}  // namespace heisvar
