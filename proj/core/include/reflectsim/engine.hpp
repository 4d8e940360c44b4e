#pragma once

#include <complex>
#include <optional>
#include <span>

#include "reflectsim/scene.hpp"

namespace reflectsim {

/// How per-ray terms are formed and combined.
///
/// kLiteral evaluates the facet-sum expression term by term as written: a
/// sqrt(N) prefactor, power-like P_T / (4 pi d)^2 lambda^2 terms weighted by
/// sqrt(G_T) sqrt(G_R) and the attenuation factor, and the flat sum also
/// carries the reflector-center ray. The result is 10 log10 |sum|.
///
/// kPhysical treats every ray as a field amplitude normalised so that N
/// in-phase rays reproduce Friis scaled by the attenuation factor and the
/// reflection efficiency. The result is 10 log10 |sum|^2 in dBm.
enum class SumMode { kLiteral, kPhysical };

SumMode parse_sum_mode(std::string_view text);
std::string to_string(SumMode mode);

struct EngineSettings {
  SumMode mode = SumMode::kPhysical;
  /// Phase reference path length. Defaults to TX -> reflector center ->
  /// sweep midpoint.
  std::optional<double> d_ref_m;
  std::optional<double> alpha_flat;
  std::optional<double> alpha_curved;

  bool operator==(const EngineSettings&) const = default;
};

struct AttenuationFactors {
  double alpha_flat = 1.0;
  double alpha_curved = 1.0;
};

/// Fraction of the TX beam footprint (HPBW cone cut on the reflector plane)
/// that the reflector intercepts, clamped to 1.
double alpha_flat(const Scenario& scenario);

/// alpha_flat reduced by the convex-mirror divergence R / (R + 2 d_rx) over
/// the reflector -> sweep-midpoint leg.
double alpha_curved(const Scenario& scenario);

AttenuationFactors attenuation(const Scenario& scenario, const EngineSettings& settings);

double reference_distance(const Scenario& scenario, const EngineSettings& settings);

struct RayContribution {
  double distance_m = 0.0;
  double tx_gain = 1.0;  // linear, at the departure angles
  double rx_gain = 1.0;  // linear, at the arrival angles
  double phase_rad = 0.0;
  std::complex<double> amplitude;
};

/// One ray's term before any ray-count prefactor. In physical mode the
/// amplitude is sqrt(P_T G_T G_R alpha eta) lambda / (4 pi d) e^{j phase}
/// (sqrt of mW); in literal mode it is P_T / (4 pi d)^2 sqrt(G_T G_R)
/// lambda^2 alpha e^{j phase}.
RayContribution contribution(const AntennaPattern& tx_pattern, const AntennaPattern& rx_pattern,
                             const PathGeometry& path, double tx_power_mw, double wavelength_m,
                             double d_ref_m, double alpha, double efficiency, SumMode mode);

/// Received power at one RX position, dB (dBm in physical mode). Returns
/// -infinity when no ray reaches the RX.
double flat_received_power(const Scenario& scenario, const Vec3& rx,
                           const EngineSettings& settings);
double convex_received_power(const Scenario& scenario, const Vec3& rx,
                             const EngineSettings& settings);

/// Dispatches on the scenario's reflector kind.
double received_power(const Scenario& scenario, const Vec3& rx, const EngineSettings& settings);

/// Unnormalised sum of contribution amplitudes over an explicit ray list,
/// in row-major order.
std::complex<double> coherent_sum(const Scenario& scenario, std::span<const FacetRay> rays,
                                  const Vec3& rx, double d_ref_m, double alpha, SumMode mode);

/// Friis received power in dBm for a single path of length d.
double friis_dbm(double tx_power_dbm, double tx_gain_dbi, double rx_gain_dbi,
                 double wavelength_m, double distance_m);

}  // namespace reflectsim
