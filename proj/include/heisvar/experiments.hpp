#pragma once

#include <memory>
#include <string>

#include "heisvar/config.hpp"
#include "heisvar/intrinsic.hpp"
#include "heisvar/report.hpp"

namespace heisvar {

// Graph function assembled from a config: either a foliation built from a
// named/CSV profile (optionally mollified) or a closed-form graph control
// ("graph:eta_tau").  `profile` is null for graph controls.
struct BuiltFunction {
  std::shared_ptr<const LagrangianProfile> profile;
  std::shared_ptr<const IntrinsicFunction> fn;
  std::string name;
};

BuiltFunction build_function(const ExperimentConfig& cfg);

// Subcommand drivers.  Each prints a human-readable summary to stdout and
// returns a process exit code: 0 = success, 1 = a mathematical check
// failed (inadmissible profile, non-critical graph, FD mismatch).
// Input problems throw Error(bad_input) and numerical breakdowns throw
// the other codes; main() maps those to exit codes 2 and 3.
int cmd_check(const ExperimentConfig& cfg);
int cmd_area(const ExperimentConfig& cfg);
int cmd_variation(const ExperimentConfig& cfg);
int cmd_lift(const ExperimentConfig& cfg);
int cmd_mollify(const ExperimentConfig& cfg);

int exit_code_for(const Error& e);

// Shared helper: run the full variation experiment (used by the CLI; the
// acceptance harness drives the library directly).
VariationReport run_variation(const ExperimentConfig& cfg);

}  // namespace heisvar
