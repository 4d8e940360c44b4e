#include "reflectsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace reflectsim {

PowerProfile run_sweep(const Scenario& scenario, const EngineSettings& settings, int threads,
                       std::string label) {
  validate(scenario);
  const std::vector<Vec3> rx = sweep_positions(scenario.geometry);
  PowerProfile profile;
  profile.positions_m = sweep_coordinates(scenario.geometry);
  profile.power_db.assign(rx.size(), 0.0);
  profile.band = scenario.band;
  profile.kind = scenario.kind();
  profile.label = std::move(label);

  const std::size_t n = rx.size();
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);

  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        profile.power_db[i] = received_power(scenario, rx[i], settings);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };

  if (workers <= 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(work, n * w / workers, n * (w + 1) / workers);
    }
  }
  if (error) std::rethrow_exception(error);

  if (settings.mode == SumMode::kLiteral) {
    double peak = -std::numeric_limits<double>::infinity();
    for (double v : profile.power_db) peak = std::max(peak, v);
    if (std::isfinite(peak)) {
      for (double& v : profile.power_db) v -= peak;
    }
  }
  return profile;
}

PowerProfile run_sweep(const ScenarioConfig& config) {
  return run_sweep(to_scenario(config), config.engine, config.threads, config.output.label);
}

}  // namespace reflectsim
