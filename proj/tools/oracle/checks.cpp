#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "reflectsim/engine.hpp"
#include "reflectsim/metrics.hpp"
#include "reflectsim/scene.hpp"
#include "reflectsim/sweep.hpp"

namespace reflectsim::oracle {
namespace {

CheckResult check(std::string name, bool passed, double expected, double actual) {
  std::ostringstream ss;
  ss.precision(12);
  ss << "oracle=" << expected << " implementation=" << actual;
  return {std::move(name), passed, ss.str()};
}

}  // namespace

std::vector<CheckResult> run_checks() {
  std::vector<CheckResult> out;

  {
    const Scenario s = build_default_scenario(Band::k28GHz, ReflectorKind::kFlat);
    const auto& spec = std::get<FlatReflectorSpec>(s.reflector);
    const FlatRaySet rays = facetize_flat(spec, s.geometry);
    const std::vector<double> expected = grid_offsets(spec.width_m, spec.facets_per_side);
    double worst = 0.0;
    for (const FacetRay& f : rays.facets) {
      worst = std::max(worst, std::abs(f.launch_point.x - expected[f.col]));
      worst = std::max(worst, std::abs(f.launch_point.z - expected[f.row]));
    }
    out.push_back(check("flat facet grid offsets (6x6)", worst <= 1e-12, 0.0, worst));
  }

  {
    const Scenario s = build_default_scenario(Band::k28GHz, ReflectorKind::kFlat);
    const Vec3 expected =
        brute_force_specular(s.geometry.tx_position, s.geometry.sweep_start, s.geometry.sweep_end);
    const Vec3 actual = specular_point(s.geometry);
    const double err = distance(expected, actual);
    out.push_back(check("specular point vs brute-force angle scan [m]", err <= 1e-6, 0.0, err));

    const PathGeometry path = path_geometry(s.geometry.tx_position, s.geometry.reflector_center,
                                            actual, s.geometry.tx_boresight,
                                            s.geometry.rx_boresight);
    const double d = image_source_distance(2.5, 2.5, 30.0);
    out.push_back(check("center-ray path length at specular point [m]",
                        std::abs(path.distance_m - d) <= 1e-9, d, path.distance_m));
  }

  {
    const Scenario s = build_default_scenario(Band::k28GHz, ReflectorKind::kFlat);
    const double expected = footprint_alpha(2.5, 24.0, 26.0, 30.0, 0.4064, 0.4064);
    const double actual = alpha_flat(s);
    out.push_back(
        check("alpha_flat 28 GHz footprint", std::abs(expected - actual) <= 1e-12, expected, actual));
  }

  {
    const Scenario s = build_default_scenario(Band::k28GHz, ReflectorKind::kConvex);
    const double expected = capture_length(2.5, 24.0);
    const ConvexRaySet rays =
        section_convex(std::get<ConvexReflectorSpec>(s.reflector), s.geometry,
                       specular_point(s.geometry), s.rx_pattern, 2.5);
    out.push_back(check("capture length 28 GHz [m]",
                        std::abs(expected - rays.capture_length_m) <= 1e-12, expected,
                        rays.capture_length_m));
    const double factor = alpha_curved(s) / alpha_flat(s);
    out.push_back(check("alpha_curved / alpha_flat, R = 0.5 m", std::abs(factor - 0.5 / 5.5) <= 1e-12,
                        0.5 / 5.5, factor));
  }

  for (Band band : kAllBands) {
    Scenario s = build_default_scenario(band, ReflectorKind::kFlat);
    std::get<FlatReflectorSpec>(s.reflector).facets_per_side = 1;
    EngineSettings e;
    e.alpha_flat = 1.0;
    const Vec3 rx = specular_point(s.geometry);
    const double actual = flat_received_power(s, rx, e);
    const double expected = friis_dbm(s.tx_power_dbm, s.tx_pattern.boresight_gain_dbi,
                                      s.rx_pattern.boresight_gain_dbi, frequency_hz(band), 5.0);
    out.push_back(check("Friis single facet " + to_string(band) + " [dBm]",
                        std::abs(actual - expected) <= 1e-9, expected, actual));
  }

  {
    PowerProfile p;
    p.power_db = sinusoid(1001, 10.0, 3.0);
    for (std::size_t i = 0; i < p.power_db.size(); ++i) p.positions_m.push_back(i * 1e-3);
    const int n = analyze(p).fringe_count;
    out.push_back(check("fringe count of a 10-period sinusoid", std::abs(n - 10) <= 1, 10, n));
  }

  {
    const PowerProfile sim = run_sweep(build_default_scenario(Band::k28GHz, ReflectorKind::kFlat), {});
    PowerProfile measured = sim;
    measured.power_db = with_gaussian_noise(sim.power_db, 1.0, 20240601);
    const double rmse = compare(sim, measured).rmse_db;
    out.push_back(check("compare RMSE with 1 dB Gaussian noise", rmse >= 0.8 && rmse <= 1.2, 1.0, rmse));

    const Scenario s = build_default_scenario(Band::k28GHz, ReflectorKind::kFlat);
    const Vec3 spec =
        brute_force_specular(s.geometry.tx_position, s.geometry.sweep_start, s.geometry.sweep_end);
    const double expected = distance(spec, s.geometry.sweep_start);
    const double actual = analyze(sim).peak_position_m;
    out.push_back(check("28 GHz flat argmax within 5 cm of specular point [m]",
                        std::abs(actual - expected) <= 0.05, expected, actual));
  }

  {
    const int f28 = analyze(run_sweep(build_default_scenario(Band::k28GHz, ReflectorKind::kFlat), {}))
                        .fringe_count;
    const int f120 =
        analyze(run_sweep(build_default_scenario(Band::k120GHz, ReflectorKind::kFlat), {}))
            .fringe_count;
    const double expected = fringe_ratio_from_path_difference(120e9, 28e9);
    const double actual = f28 > 0 ? static_cast<double>(f120) / f28 : INFINITY;
    out.push_back(check("fringe ratio 120/28 GHz within [3, 6]", actual >= 3.0 && actual <= 6.0,
                        expected, actual));
  }
  return out;
}

}  // namespace reflectsim::oracle
