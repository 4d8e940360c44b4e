#pragma once

#include <string>

#include "reflectsim/config.hpp"
#include "reflectsim/engine.hpp"
#include "reflectsim/metrics.hpp"

namespace reflectsim {

/// Evaluates the engine at every RX position of the sweep. Positions are
/// split into contiguous blocks across `threads` workers (0 = hardware
/// concurrency); each sample is computed independently, so the result does
/// not depend on the thread count. Literal-mode profiles are reported
/// relative to their own maximum.
PowerProfile run_sweep(const Scenario& scenario, const EngineSettings& settings, int threads = 0,
                       std::string label = {});

PowerProfile run_sweep(const ScenarioConfig& config);

}  // namespace reflectsim
