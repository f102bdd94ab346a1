#pragma once

#include <ostream>

#include "srsim/metrics.hpp"
#include "srsim/scenario.hpp"

namespace srsim {

struct SimOptions {
  // Event-trace sink: one line per state transition,
  // `time_us node_id old_state event new_state`.
  std::ostream* trace = nullptr;
  // Build-level SR kill switch; with it set the run must match a run whose
  // OBSS/PD thresholds all sit at OBSS/PD_min, byte for byte.
  bool force_sr_disabled = false;
};

// Runs one scenario to its horizon on the calling thread. Deterministic:
// identical (config, options) produce identical results and traces.
RunResult run_scenario(const SimulationConfig& cfg, const SimOptions& opts = {});

}  // namespace srsim
