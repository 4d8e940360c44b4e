#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "reflectsim/antenna.hpp"
#include "reflectsim/band.hpp"
#include "reflectsim/vec3.hpp"

namespace reflectsim {

inline constexpr double kInch = 0.0254;                  // m
inline constexpr double kDefaultReflectorSide = 16 * kInch;  // 0.4064 m
inline constexpr double kPlanarLimitRadius = 1e6;        // m

/// Measurement layout: TX, reflector pose and the RX positioner line.
/// Boresights are unit vectors; the RX keeps a fixed orientation while the
/// positioner moves.
struct ScenarioGeometry {
  Vec3 tx_position;
  Vec3 reflector_center;
  Vec3 reflector_normal;
  double incidence_angle_deg = 0.0;
  Vec3 sweep_start;
  Vec3 sweep_end;
  int n_rx_positions = 0;
  Vec3 tx_boresight;
  Vec3 rx_boresight;

  bool operator==(const ScenarioGeometry&) const = default;
};

void validate(const ScenarioGeometry& geom);

/// Scalar layout description from which a full ScenarioGeometry is built.
/// The reflector sits at the origin facing +y; TX and the sweep midpoint
/// are in the horizontal plane on opposite sides of the normal.
struct GeometryParams {
  double tx_range_m = 2.5;
  double rx_range_m = 2.5;
  double incidence_angle_deg = 30.0;
  double sweep_length_m = 1.8;
  /// Shift of the sweep midpoint along the sweep direction, away from the
  /// mirror point.
  double sweep_offset_m = 0.0;
  int n_rx_positions = 1800;

  bool operator==(const GeometryParams&) const = default;
};

ScenarioGeometry make_geometry(const GeometryParams& params);

struct FlatReflectorSpec {
  double width_m = kDefaultReflectorSide;
  double height_m = kDefaultReflectorSide;
  int facets_per_side = 6;
  double reflection_efficiency = 1.0;

  bool operator==(const FlatReflectorSpec&) const = default;
};

/// Cylindrical convex reflector, curved in azimuth and straight in
/// elevation.
struct ConvexReflectorSpec {
  double chord_width_m = kDefaultReflectorSide;
  double height_m = kDefaultReflectorSide;
  double radius_of_curvature_m = 0.5;
  double section_height_m = kDefaultReflectorSide / 16;
  /// Spacing of reflected-ray intercepts on the capture segment. When unset
  /// the capture segment is split into kDefaultAzimuthRays intercepts.
  std::optional<double> azimuth_ray_spacing_m;
  double reflection_efficiency = 1.0;

  static constexpr int kDefaultAzimuthRays = 32;

  [[nodiscard]] double focal_length_m() const { return radius_of_curvature_m / 2; }

  bool operator==(const ConvexReflectorSpec&) const = default;
};

void validate(const FlatReflectorSpec& spec);
void validate(const ConvexReflectorSpec& spec);

using ReflectorSpec = std::variant<FlatReflectorSpec, ConvexReflectorSpec>;

/// One launch point on the reflector surface.
struct FacetRay {
  Vec3 launch_point;
  Vec3 outward_normal;
  int row = 0;  // height index
  int col = 0;  // width / azimuth index
  double area_m2 = 0.0;
};

/// Orthonormal surface frame: `horizontal` spans the reflector width,
/// `vertical` its height.
struct ReflectorFrame {
  Vec3 center;
  Vec3 normal;
  Vec3 horizontal;
  Vec3 vertical;
};

ReflectorFrame reflector_frame(const ScenarioGeometry& geom);

struct FlatRaySet {
  std::vector<FacetRay> facets;  // row-major
  FacetRay center;
};

/// Uniform facets_per_side x facets_per_side grid of facet centers plus the
/// reflector-center ray.
FlatRaySet facetize_flat(const FlatReflectorSpec& spec, const ScenarioGeometry& geom);

struct ConvexRaySet {
  std::vector<FacetRay> rays;  // grouped by height section, row-major
  int n_sections = 0;
  int nominal_azimuth_rays = 0;
  int captured_per_section = 0;
  double capture_length_m = 0.0;
};

/// Capture length of an antenna of azimuth beamwidth hpbw at distance d_a.
double capture_length(double far_field_distance_m, double hpbw_az_deg);

/// Launch points on the convex arc whose specular reflections land on the
/// RX capture segment, replicated over every height section. An empty ray
/// set means nothing from the reflector reaches this RX.
ConvexRaySet section_convex(const ConvexReflectorSpec& spec, const ScenarioGeometry& geom,
                            const Vec3& rx, const AntennaPattern& rx_pattern,
                            double far_field_distance_m);

/// Image-source construction: where the line from the mirrored TX through
/// the reflector center crosses the sweep line.
Vec3 specular_point(const ScenarioGeometry& geom);

/// Azimuth/elevation offsets of a direction from an antenna boresight, in
/// degrees. Azimuth is measured about the world vertical.
struct DirectionOffsets {
  double az_deg = 0.0;
  double el_deg = 0.0;
};

DirectionOffsets direction_offsets(const Vec3& direction, const Vec3& boresight);

struct PathGeometry {
  double distance_m = 0.0;
  double tx_az_deg = 0.0;
  double tx_el_deg = 0.0;
  double rx_az_deg = 0.0;
  double rx_el_deg = 0.0;
};

/// TX -> launch point -> RX. Angles at each end are taken for the direction
/// the antenna looks along: toward the launch point.
PathGeometry path_geometry(const Vec3& tx, const Vec3& launch_point, const Vec3& rx,
                           const Vec3& tx_boresight, const Vec3& rx_boresight);

inline PathGeometry path_geometry(const Vec3& tx, const FacetRay& ray, const Vec3& rx,
                                  const Vec3& tx_boresight, const Vec3& rx_boresight) {
  return path_geometry(tx, ray.launch_point, rx, tx_boresight, rx_boresight);
}

struct Scenario {
  Band band = Band::k28GHz;
  ScenarioGeometry geometry;
  ReflectorSpec reflector;
  AntennaPattern tx_pattern;
  AntennaPattern rx_pattern;
  double tx_power_dbm = 0.0;
  double wavelength_m = 0.0;

  [[nodiscard]] ReflectorKind kind() const;
  [[nodiscard]] double reflection_efficiency() const;
  [[nodiscard]] double reflector_width_m() const;
  [[nodiscard]] double reflector_height_m() const;
};

void validate(const Scenario& scenario);

/// Measurement setup defaults for one band: reflector at the origin, TX at
/// 2.5 m and 30 degrees off normal, 1.8 m sweep of 1800 positions centered on
/// the specular point at 2.5 m range. Convex reflectors use the demo radius
/// of 0.5 m.
Scenario build_default_scenario(Band band, ReflectorKind kind);

int default_facets_per_side(Band band);

/// RX positions along the sweep, start to end inclusive.
std::vector<Vec3> sweep_positions(const ScenarioGeometry& geom);

/// Distance of sweep sample i from the sweep start.
std::vector<double> sweep_coordinates(const ScenarioGeometry& geom);

Vec3 sweep_midpoint(const ScenarioGeometry& geom);

}  // namespace reflectsim
