#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "reflectsim/error.hpp"
#include "reflectsim/sweep.hpp"

namespace reflectsim {
namespace {

TEST(RunSweep, TwoPositions) {
  ScenarioConfig c = default_config(Band::k28GHz, ReflectorKind::kFlat);
  c.geometry.n_rx_positions = 2;
  const PowerProfile p = run_sweep(c);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p.positions_m[0], 0.0);
  EXPECT_NEAR(p.positions_m[1], 1.8, 1e-12);
  EXPECT_EQ(p.label, "28ghz_flat");
  EXPECT_EQ(p.band, Band::k28GHz);
  EXPECT_EQ(p.kind, ReflectorKind::kFlat);
}

TEST(RunSweep, DeterministicAcrossRunsAndThreadCounts) {
  for (ReflectorKind k : {ReflectorKind::kFlat, ReflectorKind::kConvex}) {
    const Scenario s = build_default_scenario(Band::k120GHz, k);
    const PowerProfile a = run_sweep(s, {}, 1);
    const PowerProfile b = run_sweep(s, {}, 1);
    const PowerProfile c = run_sweep(s, {}, 7);
    EXPECT_EQ(a.power_db, b.power_db);
    EXPECT_EQ(a.power_db, c.power_db);
  }
}

TEST(RunSweep, MatchesPointwiseEngine) {
  const Scenario s = build_default_scenario(Band::k39GHz, ReflectorKind::kConvex);
  const PowerProfile p = run_sweep(s, {});
  const std::vector<Vec3> rx = sweep_positions(s.geometry);
  for (std::size_t i = 0; i < rx.size(); i += 131) {
    EXPECT_EQ(p.power_db[i], received_power(s, rx[i], {}));
  }
}

TEST(RunSweep, LiteralModeIsRelativeToItsMaximum) {
  EngineSettings e;
  e.mode = SumMode::kLiteral;
  const PowerProfile p = run_sweep(build_default_scenario(Band::k28GHz, ReflectorKind::kFlat), e);
  EXPECT_DOUBLE_EQ(*std::max_element(p.power_db.begin(), p.power_db.end()), 0.0);
}

TEST(RunSweep, InvalidScenarioIsRejected) {
  Scenario s = build_default_scenario(Band::k28GHz, ReflectorKind::kFlat);
  s.geometry.n_rx_positions = 1;
  EXPECT_THROW(run_sweep(s, {}), ValidationError);
}

TEST(RunSweep, EngineErrorsPropagateFromWorkers) {
  Scenario s = build_default_scenario(Band::k28GHz, ReflectorKind::kFlat);
  EngineSettings e;
  e.alpha_flat = 2.0;
  EXPECT_THROW(run_sweep(s, e, 4), ValidationError);
}

}  // namespace
}  // namespace reflectsim
