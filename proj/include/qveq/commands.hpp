#pragma once

// Command drivers behind the CLI: each takes a validated RunConfig, runs the
// requested verification and returns a ReportDocument. Configuration problems
// throw ConfigError (usage exit status); check failures are reported, never
// thrown.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qveq/report.hpp"

namespace qveq {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // verify | replay | stability | fuzzy

  int degree = 25;
  std::string mode = "exact";  // exact | bigreal
  long precision = 256;
  std::uint64_t seed = 1;
  long samples = 100;
  long range = 10;  // stability samples drawn from [-range, range]
  std::string function = "monomial";

  // replay
  std::string replay_mode = "auto";  // auto | scripted
  bool diff = false;
  bool alt_seed = false;      // seed the scripted cascade with (0,2)-(13,1)
  std::string fixture_path;   // empty -> builtin copy of data/cascade_reference.json

  // stability
  std::string control = "power:l=2";
  int q = 1;
  int iterations = 20;
  std::string kappa;  // rational string; empty -> derived from the control exponent
  std::string eps;    // demo perturbation size; empty -> control-kind default
  bool constants_only = false;
  std::string which = "power";  // constants-only target: power | product | mixed
  std::string exp_a, exp_b, exp_l;  // constants-only exponents (decimal strings)

  // fuzzy
  std::string prime = "29";
  int matrix_n = 2;

  std::string out_path;  // empty -> stdout
};

ReportDocument run_command(const RunConfig& cfg);

// 0 when every check passed, 1 otherwise (usage errors throw ConfigError,
// which callers map to 2).
int exit_code_for(const ReportDocument& report);

}  // namespace qveq
