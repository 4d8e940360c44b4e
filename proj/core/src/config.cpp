#include "reflectsim/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <set>

#include "reflectsim/error.hpp"

namespace reflectsim {
namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& key, const std::string& msg) {
  std::string where = "config";
  if (node.IsDefined() && node.Mark().line >= 0) {
    where += " line " + std::to_string(node.Mark().line + 1);
  }
  throw ValidationError(where + ": " + key + ": " + msg);
}

bool parse_number(std::string_view s, double& out) {
  if (s.starts_with('+')) s.remove_prefix(1);
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

std::string scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(node, key, "expected a scalar value");
  return node.Scalar();
}

double number(const YAML::Node& node, const std::string& key) {
  double v = 0.0;
  if (!parse_number(scalar(node, key), v)) fail(node, key, "expected a number");
  return v;
}

int integer(const YAML::Node& node, const std::string& key) {
  const std::string s = scalar(node, key);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) fail(node, key, "expected an integer");
  return v;
}

double length(const YAML::Node& node, const std::string& key) {
  try {
    return parse_length(scalar(node, key));
  } catch (const ValidationError& e) {
    fail(node, key, e.what());
  }
}

std::optional<double> auto_or_number(const YAML::Node& node, const std::string& key,
                                     bool is_length) {
  const std::string s = scalar(node, key);
  if (s == "auto") return std::nullopt;
  return is_length ? length(node, key) : number(node, key);
}

void check_keys(const YAML::Node& map, const std::string& block,
                std::initializer_list<std::string_view> allowed) {
  if (!map.IsMap()) fail(map, block, "expected a mapping");
  for (const auto& kv : map) {
    const std::string k = kv.first.as<std::string>();
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || a == k;
    if (!ok) {
      fail(kv.first, block.empty() ? k : block + "." + k, "unknown key");
    }
  }
}

template <typename Fn>
void rethrow_at(const YAML::Node& node, const std::string& key, Fn&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    fail(node, key, e.what());
  }
}

}  // namespace

double parse_length(std::string_view text) {
  struct Unit {
    std::string_view suffix;
    double scale;
  };
  static constexpr Unit kUnits[] = {{"mm", 1e-3}, {"cm", 1e-2}, {"in", kInch}, {"m", 1.0}};
  std::string_view body = text;
  while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
  double scale = 1.0;
  for (const Unit& u : kUnits) {
    if (body.ends_with(u.suffix)) {
      body.remove_suffix(u.suffix.size());
      scale = u.scale;
      break;
    }
  }
  while (!body.empty() && body.back() == ' ') body.remove_suffix(1);
  double v = 0.0;
  if (!parse_number(body, v)) {
    throw ValidationError("invalid length '" + std::string(text) +
                          "' (expected a number with optional m, cm, mm or in suffix)");
  }
  return v * scale;
}

ReflectorKind ScenarioConfig::kind() const {
  return std::holds_alternative<FlatReflectorSpec>(reflector) ? ReflectorKind::kFlat
                                                              : ReflectorKind::kConvex;
}

ScenarioConfig default_config(Band band, ReflectorKind kind) {
  const Scenario s = build_default_scenario(band, kind);
  ScenarioConfig c;
  c.band = band;
  c.reflector = s.reflector;
  c.tx_power_dbm = s.tx_power_dbm;
  c.sidelobe_floor_db = s.tx_pattern.sidelobe_floor_db;
  c.output.label = std::to_string(band_ghz(band)) + "ghz_" + to_string(kind);
  return c;
}

ScenarioConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ValidationError("config line " + std::to_string(e.mark.line + 1) + ": syntax error: " +
                          e.msg);
  }
  if (root.IsNull() || !root.IsDefined()) root = YAML::Node(YAML::NodeType::Map);
  check_keys(root, "", {"band", "reflector", "geometry", "antenna", "engine", "metrics", "output"});

  std::optional<Band> band = overrides.band;
  if (!band && root["band"]) {
    rethrow_at(root["band"], "band", [&] { band = parse_band(scalar(root["band"], "band")); });
  }
  if (!band) throw ValidationError("config: band: missing (set it in the file or pass --band)");

  const YAML::Node refl = root["reflector"];
  if (refl) {
    check_keys(refl, "reflector",
               {"kind", "width", "height", "facets_per_side", "radius_of_curvature",
                "section_height", "azimuth_ray_spacing", "reflection_efficiency"});
  }
  ReflectorKind kind = ReflectorKind::kFlat;
  if (overrides.reflector) {
    kind = *overrides.reflector;
  } else if (refl && refl["kind"]) {
    rethrow_at(refl["kind"], "reflector.kind",
               [&] { kind = parse_reflector_kind(scalar(refl["kind"], "reflector.kind")); });
  }

  ScenarioConfig c = default_config(*band, kind);

  if (kind == ReflectorKind::kFlat) {
    FlatReflectorSpec spec = std::get<FlatReflectorSpec>(c.reflector);
    if (refl) {
      for (const char* k : {"radius_of_curvature", "section_height", "azimuth_ray_spacing"}) {
        if (refl[k]) fail(refl[k], std::string("reflector.") + k, "not valid for a flat reflector");
      }
      if (refl["width"]) spec.width_m = length(refl["width"], "reflector.width");
      if (refl["height"]) spec.height_m = length(refl["height"], "reflector.height");
      if (refl["facets_per_side"]) {
        spec.facets_per_side = integer(refl["facets_per_side"], "reflector.facets_per_side");
      }
      if (refl["reflection_efficiency"]) {
        spec.reflection_efficiency =
            number(refl["reflection_efficiency"], "reflector.reflection_efficiency");
      }
    }
    rethrow_at(refl ? refl : root, "reflector", [&] { validate(spec); });
    c.reflector = spec;
  } else {
    ConvexReflectorSpec spec;
    if (refl && refl["facets_per_side"]) {
      fail(refl["facets_per_side"], "reflector.facets_per_side", "not valid for a convex reflector");
    }
    if (!refl || !refl["radius_of_curvature"]) {
      fail(refl ? refl : root, "reflector.radius_of_curvature",
           "missing (required for a convex reflector)");
    }
    spec.radius_of_curvature_m = length(refl["radius_of_curvature"], "reflector.radius_of_curvature");
    if (refl["width"]) spec.chord_width_m = length(refl["width"], "reflector.width");
    if (refl["height"]) spec.height_m = length(refl["height"], "reflector.height");
    spec.section_height_m = spec.height_m / 16;
    if (refl["section_height"]) {
      spec.section_height_m = length(refl["section_height"], "reflector.section_height");
    }
    if (refl["azimuth_ray_spacing"]) {
      spec.azimuth_ray_spacing_m =
          auto_or_number(refl["azimuth_ray_spacing"], "reflector.azimuth_ray_spacing", true);
    }
    if (refl["reflection_efficiency"]) {
      spec.reflection_efficiency =
          number(refl["reflection_efficiency"], "reflector.reflection_efficiency");
    }
    rethrow_at(refl, "reflector", [&] { validate(spec); });
    c.reflector = spec;
  }

  if (const YAML::Node g = root["geometry"]) {
    check_keys(g, "geometry",
               {"tx_range", "rx_range", "incidence_angle_deg", "sweep_length", "sweep_offset",
                "n_rx_positions"});
    auto& p = c.geometry;
    if (g["tx_range"]) p.tx_range_m = length(g["tx_range"], "geometry.tx_range");
    if (g["rx_range"]) p.rx_range_m = length(g["rx_range"], "geometry.rx_range");
    if (g["incidence_angle_deg"]) {
      p.incidence_angle_deg = number(g["incidence_angle_deg"], "geometry.incidence_angle_deg");
    }
    if (g["sweep_length"]) p.sweep_length_m = length(g["sweep_length"], "geometry.sweep_length");
    if (g["sweep_offset"]) p.sweep_offset_m = length(g["sweep_offset"], "geometry.sweep_offset");
    if (g["n_rx_positions"]) {
      p.n_rx_positions = integer(g["n_rx_positions"], "geometry.n_rx_positions");
    }
    rethrow_at(g, "geometry", [&] { make_geometry(p); });
  }

  if (const YAML::Node a = root["antenna"]) {
    check_keys(a, "antenna", {"sidelobe_floor_db", "e_plane", "tx_power_dbm"});
    if (a["sidelobe_floor_db"]) {
      c.sidelobe_floor_db = number(a["sidelobe_floor_db"], "antenna.sidelobe_floor_db");
      if (!(c.sidelobe_floor_db <= -20.0)) {
        fail(a["sidelobe_floor_db"], "antenna.sidelobe_floor_db", "must be <= -20 dB");
      }
    }
    if (a["e_plane"]) {
      const std::string v = scalar(a["e_plane"], "antenna.e_plane");
      if (v == "elevation") {
        c.plane_mapping = PlaneMapping::kEPlaneElevation;
      } else if (v == "azimuth") {
        c.plane_mapping = PlaneMapping::kEPlaneAzimuth;
      } else {
        fail(a["e_plane"], "antenna.e_plane", "expected elevation or azimuth");
      }
    }
    if (a["tx_power_dbm"]) c.tx_power_dbm = number(a["tx_power_dbm"], "antenna.tx_power_dbm");
  }

  if (const YAML::Node e = root["engine"]) {
    check_keys(e, "engine", {"mode", "d_ref", "alpha_flat", "alpha_curved", "threads"});
    if (e["mode"]) {
      rethrow_at(e["mode"], "engine.mode",
                 [&] { c.engine.mode = parse_sum_mode(scalar(e["mode"], "engine.mode")); });
    }
    if (e["d_ref"]) {
      c.engine.d_ref_m = auto_or_number(e["d_ref"], "engine.d_ref", true);
      if (c.engine.d_ref_m && !(*c.engine.d_ref_m > 0.0)) {
        fail(e["d_ref"], "engine.d_ref", "must be > 0");
      }
    }
    for (auto [key, slot] : {std::pair{"alpha_flat", &c.engine.alpha_flat},
                             std::pair{"alpha_curved", &c.engine.alpha_curved}}) {
      if (!e[key]) continue;
      *slot = auto_or_number(e[key], std::string("engine.") + key, false);
      if (*slot && !(**slot > 0.0 && **slot <= 1.0)) {
        fail(e[key], std::string("engine.") + key, "must lie in (0, 1]");
      }
    }
    if (e["threads"]) {
      c.threads = integer(e["threads"], "engine.threads");
      if (c.threads < 0) fail(e["threads"], "engine.threads", "must be >= 0");
    }
  }

  if (const YAML::Node m = root["metrics"]) {
    check_keys(m, "metrics", {"smoothing_window", "fringe_prominence_db"});
    if (m["smoothing_window"]) {
      c.analysis.smoothing_window = integer(m["smoothing_window"], "metrics.smoothing_window");
      if (c.analysis.smoothing_window < 1 || c.analysis.smoothing_window % 2 == 0) {
        fail(m["smoothing_window"], "metrics.smoothing_window", "must be a positive odd integer");
      }
    }
    if (m["fringe_prominence_db"]) {
      c.analysis.fringe_prominence_db =
          number(m["fringe_prominence_db"], "metrics.fringe_prominence_db");
      if (!(c.analysis.fringe_prominence_db > 0.0)) {
        fail(m["fringe_prominence_db"], "metrics.fringe_prominence_db", "must be > 0");
      }
    }
  }

  if (const YAML::Node o = root["output"]) {
    check_keys(o, "output", {"dir", "formats", "label"});
    if (o["dir"]) c.output.dir = scalar(o["dir"], "output.dir");
    if (o["label"]) c.output.label = scalar(o["label"], "output.label");
    if (o["formats"]) {
      const YAML::Node f = o["formats"];
      if (!f.IsSequence() || f.size() == 0) {
        fail(f, "output.formats", "expected a non-empty list of csv/json");
      }
      c.output.formats.clear();
      for (const auto& item : f) {
        rethrow_at(item, "output.formats", [&] {
          c.output.formats.push_back(parse_profile_format(scalar(item, "output.formats")));
        });
      }
    }
  }

  if (overrides.mode) c.engine.mode = *overrides.mode;
  if (overrides.out_dir) c.output.dir = *overrides.out_dir;
  if (overrides.formats) c.output.formats = *overrides.formats;
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
  return parse_config(read_text_file(path), overrides);
}

namespace {

std::string meters(double v) { return format_number(v) + "m"; }

std::string yaml_quoted(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string optional_value(const std::optional<double>& v, bool is_length) {
  if (!v) return "auto";
  return is_length ? meters(*v) : format_number(*v);
}

}  // namespace

std::string dump_config(const ScenarioConfig& c) {
  std::string out;
  auto line = [&out](std::string_view indent, std::string_view key, const std::string& value) {
    out.append(indent).append(key).append(": ").append(value).append("\n");
  };
  line("", "band", std::to_string(band_ghz(c.band)));
  out += "reflector:\n";
  line("  ", "kind", to_string(c.kind()));
  if (const auto* flat = std::get_if<FlatReflectorSpec>(&c.reflector)) {
    line("  ", "width", meters(flat->width_m));
    line("  ", "height", meters(flat->height_m));
    line("  ", "facets_per_side", std::to_string(flat->facets_per_side));
    line("  ", "reflection_efficiency", format_number(flat->reflection_efficiency));
  } else {
    const auto& cv = std::get<ConvexReflectorSpec>(c.reflector);
    line("  ", "width", meters(cv.chord_width_m));
    line("  ", "height", meters(cv.height_m));
    line("  ", "radius_of_curvature", meters(cv.radius_of_curvature_m));
    line("  ", "section_height", meters(cv.section_height_m));
    line("  ", "azimuth_ray_spacing", optional_value(cv.azimuth_ray_spacing_m, true));
    line("  ", "reflection_efficiency", format_number(cv.reflection_efficiency));
  }
  out += "geometry:\n";
  line("  ", "tx_range", meters(c.geometry.tx_range_m));
  line("  ", "rx_range", meters(c.geometry.rx_range_m));
  line("  ", "incidence_angle_deg", format_number(c.geometry.incidence_angle_deg));
  line("  ", "sweep_length", meters(c.geometry.sweep_length_m));
  line("  ", "sweep_offset", meters(c.geometry.sweep_offset_m));
  line("  ", "n_rx_positions", std::to_string(c.geometry.n_rx_positions));
  out += "antenna:\n";
  line("  ", "sidelobe_floor_db", format_number(c.sidelobe_floor_db));
  line("  ", "e_plane",
       c.plane_mapping == PlaneMapping::kEPlaneElevation ? "elevation" : "azimuth");
  line("  ", "tx_power_dbm", format_number(c.tx_power_dbm));
  out += "engine:\n";
  line("  ", "mode", to_string(c.engine.mode));
  line("  ", "d_ref", optional_value(c.engine.d_ref_m, true));
  line("  ", "alpha_flat", optional_value(c.engine.alpha_flat, false));
  line("  ", "alpha_curved", optional_value(c.engine.alpha_curved, false));
  line("  ", "threads", std::to_string(c.threads));
  out += "metrics:\n";
  line("  ", "smoothing_window", std::to_string(c.analysis.smoothing_window));
  line("  ", "fringe_prominence_db", format_number(c.analysis.fringe_prominence_db));
  out += "output:\n";
  line("  ", "dir", yaml_quoted(c.output.dir));
  std::string formats = "[";
  for (std::size_t i = 0; i < c.output.formats.size(); ++i) {
    if (i) formats += ", ";
    formats += to_string(c.output.formats[i]);
  }
  line("  ", "formats", formats + "]");
  line("  ", "label", yaml_quoted(c.output.label));
  return out;
}

Scenario to_scenario(const ScenarioConfig& c) {
  const BandDefaults d = band_defaults(c.band, c.plane_mapping);
  Scenario s;
  s.band = c.band;
  s.geometry = make_geometry(c.geometry);
  s.reflector = c.reflector;
  s.tx_pattern = d.tx_pattern;
  s.rx_pattern = d.rx_pattern;
  s.tx_pattern.sidelobe_floor_db = c.sidelobe_floor_db;
  s.rx_pattern.sidelobe_floor_db = c.sidelobe_floor_db;
  s.tx_power_dbm = c.tx_power_dbm;
  s.wavelength_m = d.wavelength_m;
  validate(s);
  return s;
}

}  // namespace reflectsim
