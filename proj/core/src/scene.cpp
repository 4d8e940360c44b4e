#include "reflectsim/scene.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "reflectsim/error.hpp"

namespace reflectsim {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

bool is_unit(const Vec3& v, double tol) { return v.is_finite() && std::abs(norm(v) - 1.0) <= tol; }

// Horizontal-plane coordinates in the reflector frame: `a` along the width
// axis, `b` along the outward normal.
struct Planar {
  double a = 0.0;
  double b = 0.0;
};

Planar project(const ReflectorFrame& f, const Vec3& p) {
  const Vec3 d = p - f.center;
  return {dot(d, f.horizontal), dot(d, f.normal)};
}

Planar unit2(Planar v) {
  const double n = std::hypot(v.a, v.b);
  return {v.a / n, v.b / n};
}

}  // namespace

void validate(const ScenarioGeometry& g) {
  require(g.tx_position.is_finite() && g.reflector_center.is_finite() &&
              g.sweep_start.is_finite() && g.sweep_end.is_finite(),
          "geometry: positions must be finite");
  require(is_unit(g.reflector_normal, 1e-12), "geometry: reflector normal must be a unit vector");
  require(is_unit(g.tx_boresight, 1e-9) && is_unit(g.rx_boresight, 1e-9),
          "geometry: antenna boresights must be unit vectors");
  require(distance(g.sweep_start, g.sweep_end) > 0.0, "geometry: sweep length must be positive");
  require(g.n_rx_positions >= 2, "geometry: n_rx_positions must be >= 2");
  const Vec3 to_tx = g.tx_position - g.reflector_center;
  require(dot(to_tx, g.reflector_normal) > 0.0,
          "geometry: TX must be on the illuminated side of the reflector");
  const double incidence =
      std::acos(std::clamp(dot(normalized(to_tx), g.reflector_normal), -1.0, 1.0)) * kRadToDeg;
  require(std::abs(incidence - g.incidence_angle_deg) <= 1e-6,
          "geometry: incidence angle does not match the TX position");
}

ScenarioGeometry make_geometry(const GeometryParams& p) {
  require(std::isfinite(p.tx_range_m) && p.tx_range_m > 0.0, "geometry: tx_range must be > 0");
  require(std::isfinite(p.rx_range_m) && p.rx_range_m > 0.0, "geometry: rx_range must be > 0");
  require(std::isfinite(p.incidence_angle_deg) && p.incidence_angle_deg >= 0.0 &&
              p.incidence_angle_deg < 90.0,
          "geometry: incidence angle must lie in [0, 90) degrees");
  require(std::isfinite(p.sweep_length_m) && p.sweep_length_m > 0.0,
          "geometry: sweep_length must be > 0");
  require(std::isfinite(p.sweep_offset_m), "geometry: sweep_offset must be finite");
  require(p.n_rx_positions >= 2, "geometry: n_rx_positions must be >= 2");

  const double inc = p.incidence_angle_deg * kDegToRad;
  const Vec3 incoming_dir{-std::sin(inc), std::cos(inc), 0.0};  // center -> TX
  const Vec3 mirror_dir{std::sin(inc), std::cos(inc), 0.0};     // center -> specular RX
  const Vec3 along{std::cos(inc), -std::sin(inc), 0.0};         // positioner axis

  ScenarioGeometry g;
  g.reflector_center = {};
  g.reflector_normal = {0.0, 1.0, 0.0};
  g.incidence_angle_deg = p.incidence_angle_deg;
  g.tx_position = incoming_dir * p.tx_range_m;
  const Vec3 mid = mirror_dir * p.rx_range_m + along * p.sweep_offset_m;
  g.sweep_start = mid - along * (p.sweep_length_m / 2);
  g.sweep_end = mid + along * (p.sweep_length_m / 2);
  g.n_rx_positions = p.n_rx_positions;
  g.tx_boresight = -incoming_dir;
  g.rx_boresight = -mirror_dir;
  return g;
}

void validate(const FlatReflectorSpec& s) {
  require(std::isfinite(s.width_m) && s.width_m > 0.0, "reflector: width must be > 0");
  require(std::isfinite(s.height_m) && s.height_m > 0.0, "reflector: height must be > 0");
  require(s.facets_per_side >= 1, "reflector: facets_per_side must be >= 1");
  require(s.reflection_efficiency > 0.0 && s.reflection_efficiency <= 1.0,
          "reflector: reflection_efficiency must lie in (0, 1]");
}

void validate(const ConvexReflectorSpec& s) {
  require(std::isfinite(s.chord_width_m) && s.chord_width_m > 0.0,
          "reflector: chord width must be > 0");
  require(std::isfinite(s.height_m) && s.height_m > 0.0, "reflector: height must be > 0");
  require(std::isfinite(s.radius_of_curvature_m) && s.radius_of_curvature_m > s.chord_width_m / 2,
          "reflector: radius_of_curvature must exceed half the chord width");
  require(s.section_height_m > 0.0 && s.section_height_m <= s.height_m,
          "reflector: section_height must lie in (0, height]");
  if (s.azimuth_ray_spacing_m) {
    require(std::isfinite(*s.azimuth_ray_spacing_m) && *s.azimuth_ray_spacing_m > 0.0,
            "reflector: azimuth_ray_spacing must be > 0");
  }
  require(s.reflection_efficiency > 0.0 && s.reflection_efficiency <= 1.0,
          "reflector: reflection_efficiency must lie in (0, 1]");
}

ReflectorFrame reflector_frame(const ScenarioGeometry& geom) {
  ReflectorFrame f;
  f.center = geom.reflector_center;
  f.normal = normalized(geom.reflector_normal);
  const Vec3 h = cross(f.normal, kUp);
  if (norm(h) < 1e-12) throw GeometryError("reflector normal must not be vertical");
  f.horizontal = normalized(h);
  f.vertical = cross(f.horizontal, f.normal);
  return f;
}

FlatRaySet facetize_flat(const FlatReflectorSpec& spec, const ScenarioGeometry& geom) {
  validate(spec);
  const ReflectorFrame f = reflector_frame(geom);
  const int n = spec.facets_per_side;
  const double cell_w = spec.width_m / n;
  const double cell_h = spec.height_m / n;

  FlatRaySet out;
  out.facets.reserve(static_cast<std::size_t>(n) * n);
  for (int row = 0; row < n; ++row) {
    const double v = (row + 0.5) * cell_h - spec.height_m / 2;
    for (int col = 0; col < n; ++col) {
      const double h = (col + 0.5) * cell_w - spec.width_m / 2;
      out.facets.push_back(
          {f.center + f.horizontal * h + f.vertical * v, f.normal, row, col, cell_w * cell_h});
    }
  }
  out.center = {f.center, f.normal, -1, -1, 0.0};
  return out;
}

double capture_length(double far_field_distance_m, double hpbw_az_deg) {
  return 2.0 * far_field_distance_m * std::tan(hpbw_az_deg * kDegToRad / 2);
}

ConvexRaySet section_convex(const ConvexReflectorSpec& spec, const ScenarioGeometry& geom,
                            const Vec3& rx, const AntennaPattern& rx_pattern,
                            double far_field_distance_m) {
  validate(spec);
  require(std::isfinite(far_field_distance_m) && far_field_distance_m > 0.0,
          "far-field distance must be > 0");
  const ReflectorFrame f = reflector_frame(geom);
  if (dot(rx - f.center, f.normal) <= 0.0) {
    throw GeometryError("RX must be in front of the reflector");
  }

  ConvexRaySet out;
  out.n_sections = std::max(1, static_cast<int>(std::ceil(spec.height_m / spec.section_height_m - 1e-9)));
  out.capture_length_m = capture_length(far_field_distance_m, rx_pattern.hpbw_az_deg);
  out.nominal_azimuth_rays =
      spec.azimuth_ray_spacing_m
          ? std::max(1, static_cast<int>(std::ceil(out.capture_length_m / *spec.azimuth_ray_spacing_m - 1e-9)))
          : ConvexReflectorSpec::kDefaultAzimuthRays;

  const double R = spec.radius_of_curvature_m;
  const double arc_half = R * std::asin(spec.chord_width_m / (2 * R));

  // Arc parametrised by signed arc length s from the reflector center.
  auto arc_point = [R](double s) {
    const double psi = s / R;
    const double sh = std::sin(psi / 2);
    return Planar{R * std::sin(psi), -2.0 * R * sh * sh};
  };
  auto arc_normal = [R](double s) { return Planar{std::sin(s / R), std::cos(s / R)}; };

  const Planar tx2 = project(f, geom.tx_position);
  const Planar rx2 = project(f, rx);
  const Planar look = unit2({-rx2.a, -rx2.b});
  const Planar seg_dir{-look.b, look.a};
  const double l = out.capture_length_m;
  const int n_az = out.nominal_azimuth_rays;

  struct Hit {
    Planar point;
    Planar normal;
    int col;
  };
  std::vector<Hit> hits;
  for (int j = 0; j < n_az; ++j) {
    const double offset = (j + 0.5) * (l / n_az) - l / 2;
    const Planar target{rx2.a + seg_dir.a * offset, rx2.b + seg_dir.b * offset};
    // Zero where the local normal bisects the TX and target directions.
    auto mismatch = [&](double s) {
      const Planar p = arc_point(s);
      const Planar n = arc_normal(s);
      const Planar u1 = unit2({tx2.a - p.a, tx2.b - p.b});
      const Planar u2 = unit2({target.a - p.a, target.b - p.b});
      const Planar bis{u1.a + u2.a, u1.b + u2.b};
      return n.a * bis.b - n.b * bis.a;
    };
    const double f_lo = mismatch(-arc_half);
    const double f_hi = mismatch(arc_half);
    double s_root = 0.0;
    if (f_lo == 0.0) {
      s_root = -arc_half;
    } else if (f_hi == 0.0) {
      s_root = arc_half;
    } else if ((f_lo < 0.0) == (f_hi < 0.0)) {
      continue;
    } else {
      std::uintmax_t max_iter = 200;
      const auto [lo, hi] = boost::math::tools::toms748_solve(
          mismatch, -arc_half, arc_half, f_lo, f_hi,
          [](double a, double b) { return std::abs(b - a) <= 1e-13; }, max_iter);
      s_root = (lo + hi) / 2;
    }
    hits.push_back({arc_point(s_root), arc_normal(s_root), j});
  }
  out.captured_per_section = static_cast<int>(hits.size());

  const double pitch = spec.height_m / out.n_sections;
  out.rays.reserve(hits.size() * out.n_sections);
  for (int row = 0; row < out.n_sections; ++row) {
    const double z = (row + 0.5) * pitch - spec.height_m / 2;
    for (const Hit& h : hits) {
      const Vec3 p = f.center + f.horizontal * h.point.a + f.normal * h.point.b + f.vertical * z;
      const Vec3 n = f.horizontal * h.normal.a + f.normal * h.normal.b;
      out.rays.push_back({p, n, row, h.col, 0.0});
    }
  }
  return out;
}

Vec3 specular_point(const ScenarioGeometry& geom) {
  const Vec3 n = normalized(geom.reflector_normal);
  const Vec3 image =
      geom.tx_position - n * (2.0 * dot(geom.tx_position - geom.reflector_center, n));
  const Vec3 d1 = geom.reflector_center - image;
  const Vec3 d2 = geom.sweep_end - geom.sweep_start;
  const Vec3 w0 = image - geom.sweep_start;
  const double a = dot(d1, d1);
  const double b = dot(d1, d2);
  const double c = dot(d2, d2);
  const double d = dot(d1, w0);
  const double e = dot(d2, w0);
  const double denom = a * c - b * b;
  if (denom <= 1e-12 * a * c) {
    throw GeometryError("sweep line is parallel to the image-source sight line");
  }
  const double s = (b * e - c * d) / denom;
  const double t = (a * e - b * d) / denom;
  const Vec3 on_sight = image + d1 * s;
  const Vec3 on_sweep = geom.sweep_start + d2 * t;
  if (distance(on_sight, on_sweep) > 1e-6 * (1.0 + norm(d1))) {
    throw GeometryError("sweep line does not intersect the image-source sight line");
  }
  return on_sweep;
}

DirectionOffsets direction_offsets(const Vec3& direction, const Vec3& boresight) {
  const Vec3 fwd = normalized(boresight);
  const Vec3 l = cross(kUp, fwd);
  if (norm(l) < 1e-12) throw GeometryError("antenna boresight must not be vertical");
  const Vec3 left = normalized(l);
  const Vec3 up = cross(fwd, left);
  const double x = dot(direction, fwd);
  const double y = dot(direction, left);
  const double z = dot(direction, up);
  return {std::atan2(y, x) * kRadToDeg, std::atan2(z, std::hypot(x, y)) * kRadToDeg};
}

PathGeometry path_geometry(const Vec3& tx, const Vec3& launch_point, const Vec3& rx,
                           const Vec3& tx_boresight, const Vec3& rx_boresight) {
  const Vec3 out_leg = launch_point - tx;
  const Vec3 back_leg = launch_point - rx;
  const double d1 = norm(out_leg);
  const double d2 = norm(back_leg);
  if (!(d1 > 1e-12) || !(d2 > 1e-12)) {
    throw GeometryError("degenerate ray: launch point coincides with an antenna");
  }
  const DirectionOffsets at_tx = direction_offsets(out_leg, tx_boresight);
  const DirectionOffsets at_rx = direction_offsets(back_leg, rx_boresight);
  return {d1 + d2, at_tx.az_deg, at_tx.el_deg, at_rx.az_deg, at_rx.el_deg};
}

ReflectorKind Scenario::kind() const {
  return std::holds_alternative<FlatReflectorSpec>(reflector) ? ReflectorKind::kFlat
                                                              : ReflectorKind::kConvex;
}

double Scenario::reflection_efficiency() const {
  return std::visit([](const auto& s) { return s.reflection_efficiency; }, reflector);
}

double Scenario::reflector_width_m() const {
  if (const auto* flat = std::get_if<FlatReflectorSpec>(&reflector)) return flat->width_m;
  return std::get<ConvexReflectorSpec>(reflector).chord_width_m;
}

double Scenario::reflector_height_m() const {
  return std::visit([](const auto& s) { return s.height_m; }, reflector);
}

void validate(const Scenario& s) {
  validate(s.geometry);
  std::visit([](const auto& spec) { validate(spec); }, s.reflector);
  validate(s.tx_pattern);
  validate(s.rx_pattern);
  require(std::isfinite(s.wavelength_m) && s.wavelength_m > 0.0, "wavelength must be > 0");
  require(std::isfinite(s.tx_power_dbm), "TX power must be finite");
}

int default_facets_per_side(Band band) { return band == Band::k120GHz ? 16 : 6; }

Scenario build_default_scenario(Band band, ReflectorKind kind) {
  const BandDefaults d = band_defaults(band);
  Scenario s;
  s.band = band;
  s.geometry = make_geometry(GeometryParams{});
  if (kind == ReflectorKind::kFlat) {
    FlatReflectorSpec flat;
    flat.facets_per_side = default_facets_per_side(band);
    s.reflector = flat;
  } else {
    s.reflector = ConvexReflectorSpec{};
  }
  s.tx_pattern = d.tx_pattern;
  s.rx_pattern = d.rx_pattern;
  s.tx_power_dbm = d.tx_power_dbm;
  s.wavelength_m = d.wavelength_m;
  return s;
}

std::vector<Vec3> sweep_positions(const ScenarioGeometry& geom) {
  std::vector<Vec3> out;
  const int n = geom.n_rx_positions;
  out.reserve(n);
  const Vec3 span = geom.sweep_end - geom.sweep_start;
  for (int i = 0; i < n; ++i) {
    out.push_back(geom.sweep_start + span * (static_cast<double>(i) / (n - 1)));
  }
  return out;
}

std::vector<double> sweep_coordinates(const ScenarioGeometry& geom) {
  std::vector<double> out;
  const int n = geom.n_rx_positions;
  out.reserve(n);
  const double length = distance(geom.sweep_start, geom.sweep_end);
  for (int i = 0; i < n; ++i) out.push_back(length * (static_cast<double>(i) / (n - 1)));
  return out;
}

Vec3 sweep_midpoint(const ScenarioGeometry& geom) {
  return (geom.sweep_start + geom.sweep_end) * 0.5;
}

}  // namespace reflectsim
