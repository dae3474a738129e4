#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhdbox/monitor.hpp"
#include "mhdbox/solver.hpp"

namespace mhdbox {

// Full run description.  Parsed from a JSON document; every optional key has
// a documented default, unknown keys are rejected.
struct RunConfig {
  int n = 0;
  double l = kTwoPi;
  SolverParams params;
  std::string ic;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  int cadence = 1;                   // record every this many steps
  std::vector<double> eps_ladder;    // default {t_end/4, t_end/16}
  double c_gronwall = 1.0;
  double m_alert = 1.0;              // alert level of the window criterion
  std::vector<double> s_list = {1.0, 2.0};
  double aux_p = 4.0;
  double aux_q = 8.0;
  std::string outdir = "out";
  int checkpoint_interval = 0;       // steps; 0 disables checkpoints

  MonitorConfig monitor_config() const { return MonitorConfig{s_list, aux_p}; }
};

// Parse a JSON document.  Mandatory keys: n, nu, eta, dt, t_end, ic.
// Throws ConfigError naming the offending key / constraint.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

// Canonical serialization of the filled config (defaults applied, keys in a
// fixed order, full float precision).  Equal configs hash equal.
std::string canonical_config(const RunConfig& c);
std::uint64_t config_hash(const RunConfig& c);

}  // namespace mhdbox
