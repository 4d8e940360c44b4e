#include "reflectsim/engine.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "reflectsim/error.hpp"

namespace reflectsim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_alpha(double a, const char* name) {
  if (!(a > 0.0 && a <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in (0, 1]");
  }
}

}  // namespace

SumMode parse_sum_mode(std::string_view text) {
  if (text == "physical") return SumMode::kPhysical;
  if (text == "literal") return SumMode::kLiteral;
  throw ValidationError("unknown mode: '" + std::string(text) + "' (expected literal or physical)");
}

std::string to_string(SumMode mode) {
  return mode == SumMode::kPhysical ? "physical" : "literal";
}

double alpha_flat(const Scenario& scenario) {
  const ScenarioGeometry& g = scenario.geometry;
  const Vec3 to_tx = g.tx_position - g.reflector_center;
  const double range = norm(to_tx);
  const double cos_inc = dot(to_tx, normalized(g.reflector_normal)) / range;
  const double semi_az = range * std::tan(scenario.tx_pattern.hpbw_az_deg * kPi / 360.0);
  const double semi_el = range * std::tan(scenario.tx_pattern.hpbw_el_deg * kPi / 360.0) / cos_inc;
  const double footprint = kPi * semi_az * semi_el;
  if (!(footprint > 0.0) || !std::isfinite(footprint)) {
    throw ValidationError("TX beam footprint on the reflector is degenerate");
  }
  const double projected =
      scenario.reflector_width_m() * scenario.reflector_height_m() * cos_inc;
  return std::min(1.0, projected / footprint);
}

double alpha_curved(const Scenario& scenario) {
  const auto* convex = std::get_if<ConvexReflectorSpec>(&scenario.reflector);
  if (convex == nullptr) throw ValidationError("alpha_curved requires a convex reflector");
  const double R = convex->radius_of_curvature_m;
  const double d_rx = distance(sweep_midpoint(scenario.geometry), scenario.geometry.reflector_center);
  return alpha_flat(scenario) * R / (R + 2.0 * d_rx);
}

AttenuationFactors attenuation(const Scenario& scenario, const EngineSettings& settings) {
  AttenuationFactors a;
  a.alpha_flat = settings.alpha_flat.value_or(alpha_flat(scenario));
  check_alpha(a.alpha_flat, "alpha_flat");
  if (settings.alpha_curved) {
    a.alpha_curved = *settings.alpha_curved;
  } else if (const auto* convex = std::get_if<ConvexReflectorSpec>(&scenario.reflector)) {
    const double R = convex->radius_of_curvature_m;
    const double d_rx =
        distance(sweep_midpoint(scenario.geometry), scenario.geometry.reflector_center);
    a.alpha_curved = a.alpha_flat * R / (R + 2.0 * d_rx);
  } else {
    a.alpha_curved = a.alpha_flat;
  }
  check_alpha(a.alpha_curved, "alpha_curved");
  return a;
}

double reference_distance(const Scenario& scenario, const EngineSettings& settings) {
  if (settings.d_ref_m) return *settings.d_ref_m;
  const ScenarioGeometry& g = scenario.geometry;
  return distance(g.tx_position, g.reflector_center) +
         distance(g.reflector_center, sweep_midpoint(g));
}

RayContribution contribution(const AntennaPattern& tx_pattern, const AntennaPattern& rx_pattern,
                             const PathGeometry& path, double tx_power_mw, double wavelength_m,
                             double d_ref_m, double alpha, double efficiency, SumMode mode) {
  if (!(path.distance_m > 0.0)) throw GeometryError("ray path length must be positive");
  RayContribution c;
  c.distance_m = path.distance_m;
  c.tx_gain = gain(tx_pattern, path.tx_az_deg, path.tx_el_deg);
  c.rx_gain = gain(rx_pattern, path.rx_az_deg, path.rx_el_deg);
  c.phase_rad = -2.0 * kPi * (path.distance_m - d_ref_m) / wavelength_m;
  const std::complex<double> phasor = std::polar(1.0, c.phase_rad);
  const double d = path.distance_m;
  double magnitude = 0.0;
  if (mode == SumMode::kPhysical) {
    magnitude = std::sqrt(tx_power_mw * c.tx_gain * c.rx_gain * alpha * efficiency) *
                wavelength_m / (4.0 * kPi * d);
  } else {
    const double spread = 4.0 * kPi * d;
    magnitude = tx_power_mw / (spread * spread) * std::sqrt(c.tx_gain) * std::sqrt(c.rx_gain) *
                wavelength_m * wavelength_m * alpha;
  }
  c.amplitude = magnitude * phasor;
  return c;
}

std::complex<double> coherent_sum(const Scenario& scenario, std::span<const FacetRay> rays,
                                  const Vec3& rx, double d_ref_m, double alpha, SumMode mode) {
  const ScenarioGeometry& g = scenario.geometry;
  const double p_mw = dbm_to_mw(scenario.tx_power_dbm);
  const double eta = scenario.reflection_efficiency();
  std::complex<double> sum{0.0, 0.0};
  for (const FacetRay& ray : rays) {
    const PathGeometry path = path_geometry(g.tx_position, ray, rx, g.tx_boresight, g.rx_boresight);
    sum += contribution(scenario.tx_pattern, scenario.rx_pattern, path, p_mw,
                        scenario.wavelength_m, d_ref_m, alpha, eta, mode)
               .amplitude;
  }
  return sum;
}

double flat_received_power(const Scenario& scenario, const Vec3& rx,
                           const EngineSettings& settings) {
  const auto* spec = std::get_if<FlatReflectorSpec>(&scenario.reflector);
  if (spec == nullptr) throw ValidationError("flat_received_power requires a flat reflector");
  const FlatRaySet rays = facetize_flat(*spec, scenario.geometry);
  if (rays.facets.empty()) return kNegInf;
  const double d_ref = reference_distance(scenario, settings);
  const double alpha = attenuation(scenario, settings).alpha_flat;
  const double n = static_cast<double>(rays.facets.size());

  if (settings.mode == SumMode::kPhysical) {
    const std::complex<double> field =
        coherent_sum(scenario, rays.facets, rx, d_ref, alpha, settings.mode) / n;
    return linear_to_db(std::norm(field));
  }
  std::complex<double> sum = coherent_sum(scenario, rays.facets, rx, d_ref, alpha, settings.mode);
  sum += coherent_sum(scenario, std::span(&rays.center, 1), rx, d_ref, alpha, settings.mode);
  return linear_to_db(std::sqrt(n) * std::abs(sum));
}

double convex_received_power(const Scenario& scenario, const Vec3& rx,
                             const EngineSettings& settings) {
  const auto* spec = std::get_if<ConvexReflectorSpec>(&scenario.reflector);
  if (spec == nullptr) throw ValidationError("convex_received_power requires a convex reflector");
  const double d_a = distance(rx, scenario.geometry.reflector_center);
  const ConvexRaySet rays = section_convex(*spec, scenario.geometry, rx, scenario.rx_pattern, d_a);
  if (rays.rays.empty()) return kNegInf;
  const double d_ref = reference_distance(scenario, settings);
  const double alpha = attenuation(scenario, settings).alpha_curved;
  const std::complex<double> sum =
      coherent_sum(scenario, rays.rays, rx, d_ref, alpha, settings.mode);

  if (settings.mode == SumMode::kPhysical) {
    return linear_to_db(std::norm(sum / static_cast<double>(rays.rays.size())));
  }
  const double prefactor =
      std::sqrt(static_cast<double>(rays.n_sections) * rays.nominal_azimuth_rays);
  return linear_to_db(prefactor * std::abs(sum));
}

double received_power(const Scenario& scenario, const Vec3& rx, const EngineSettings& settings) {
  return scenario.kind() == ReflectorKind::kFlat ? flat_received_power(scenario, rx, settings)
                                                 : convex_received_power(scenario, rx, settings);
}

double friis_dbm(double tx_power_dbm, double tx_gain_dbi, double rx_gain_dbi,
                 double wavelength_m, double distance_m) {
  return tx_power_dbm + tx_gain_dbi + rx_gain_dbi +
         20.0 * std::log10(wavelength_m / (4.0 * kPi * distance_m));
}

}  // namespace reflectsim
