#pragma once

// Independent reference computations. Nothing here calls into the engine or
// scene code it is used to check; each value comes from closed-form
// arithmetic, brute-force search or a synthetic signal.

#include <cstdint>
#include <string>
#include <vector>

#include "reflectsim/vec3.hpp"

namespace reflectsim::oracle {

/// Facet-center offsets of an n-per-side uniform grid across `side`:
/// +/-(2k+1) * side / (2n).
std::vector<double> grid_offsets(double side, int n);

/// Specular RX point on a sweep line found by brute-force scanning for the
/// sample where the reflection angle at the reflector center matches the
/// incidence angle, refined by ternary search. Reflector normal must be +y
/// at the origin.
Vec3 brute_force_specular(const Vec3& tx, const Vec3& sweep_start, const Vec3& sweep_end);

/// TX -> reflector center -> RX path length via the mirrored TX.
double image_source_distance(double tx_range, double rx_range, double incidence_deg);

/// Beam footprint ratio written out term by term.
double footprint_alpha(double range, double hpbw_az_deg, double hpbw_el_deg,
                       double incidence_deg, double width, double height);

double friis_dbm(double tx_power_dbm, double gain_tx_dbi, double gain_rx_dbi,
                 double frequency_hz, double distance);

double capture_length(double distance, double hpbw_deg);

/// amplitude_db * sin(2 pi periods x) sampled at n points over [0, 1).
std::vector<double> sinusoid(std::size_t n, double periods, double amplitude_db);

/// Adds N(0, sigma^2) noise from a fixed-seed generator.
std::vector<double> with_gaussian_noise(const std::vector<double>& values, double sigma,
                                        std::uint64_t seed);

/// Fringe spacing scales with wavelength for a fixed path-difference slope;
/// the expected fringe-count ratio between two bands is the frequency ratio.
double fringe_ratio_from_path_difference(double f_high_hz, double f_low_hz);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Implementation-vs-oracle comparisons behind the `oracle` subcommand.
std::vector<CheckResult> run_checks();

}  // namespace reflectsim::oracle
