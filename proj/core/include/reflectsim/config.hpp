#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reflectsim/engine.hpp"
#include "reflectsim/metrics.hpp"
#include "reflectsim/profile_io.hpp"
#include "reflectsim/scene.hpp"

namespace reflectsim {

struct OutputConfig {
  std::string dir = "out";
  std::vector<ProfileFormat> formats{ProfileFormat::kCsv};
  std::string label;

  bool operator==(const OutputConfig&) const = default;
};

/// Fully resolved scenario file. Every field is explicit after parsing, so
/// dump_config() followed by parse_config() reproduces an equal value.
struct ScenarioConfig {
  Band band = Band::k28GHz;
  ReflectorSpec reflector;
  GeometryParams geometry;
  double sidelobe_floor_db = -30.0;
  PlaneMapping plane_mapping = PlaneMapping::kEPlaneElevation;
  double tx_power_dbm = -10.0;
  EngineSettings engine;
  int threads = 0;  // 0: hardware concurrency
  AnalysisOptions analysis;
  OutputConfig output;

  [[nodiscard]] ReflectorKind kind() const;
  bool operator==(const ScenarioConfig&) const = default;
};

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
  std::optional<Band> band;
  std::optional<ReflectorKind> reflector;
  std::optional<SumMode> mode;
  std::optional<std::string> out_dir;
  std::optional<std::vector<ProfileFormat>> formats;
};

/// Parses the YAML scenario schema. Omitted blocks take the measurement
/// defaults for the band; a convex reflector must state its radius of
/// curvature. Errors are ValidationError with line and key context.
ScenarioConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

ScenarioConfig load_config(const std::filesystem::path& path,
                           const ConfigOverrides& overrides = {});

/// Canonical text form: every key present, lengths in meters with the
/// shortest round-tripping decimal.
std::string dump_config(const ScenarioConfig& config);

/// Defaults for one band and reflector shape (convex uses the 0.5 m demo
/// radius).
ScenarioConfig default_config(Band band, ReflectorKind kind);

Scenario to_scenario(const ScenarioConfig& config);

/// "16in", "40.64cm", "406.4mm", "0.4064m" or a bare number of meters.
double parse_length(std::string_view text);

}  // namespace reflectsim
