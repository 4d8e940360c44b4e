#include "reflectsim/profile_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>
#include <vector>

#include "reflectsim/error.hpp"

namespace reflectsim {
namespace {

using nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (s.starts_with('+')) s.remove_prefix(1);
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && !s.empty();
}

ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

ordered_json stats_json(const ProfileStats& s) {
  ordered_json j;
  j["band"] = s.band ? ordered_json(to_string(*s.band)) : ordered_json(nullptr);
  j["peak_db"] = number_or_null(s.peak_db);
  j["peak_position_m"] = s.peak_position_m;
  j["fringe_count"] = s.fringe_count;
  j["envelope_dynamic_range_db"] = s.envelope_dynamic_range_db;
  j["rhs_decay_db"] = s.rhs_decay_db;
  return j;
}

}  // namespace

ProfileFormat parse_profile_format(std::string_view text) {
  if (text == "csv") return ProfileFormat::kCsv;
  if (text == "json") return ProfileFormat::kJson;
  throw ValidationError("unknown format: '" + std::string(text) + "' (expected csv or json)");
}

std::string to_string(ProfileFormat format) {
  return format == ProfileFormat::kCsv ? "csv" : "json";
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string profile_to_csv(const PowerProfile& profile) {
  validate(profile);
  std::string out = "position_m,power_db\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out += format_number(profile.positions_m[i]);
    out += ',';
    out += format_number(profile.power_db[i]);
    out += '\n';
  }
  return out;
}

std::string profile_to_json(const PowerProfile& profile) {
  validate(profile);
  ordered_json j;
  j["meta"]["band"] = profile.band ? ordered_json(to_string(*profile.band)) : ordered_json(nullptr);
  j["meta"]["kind"] = profile.kind ? ordered_json(to_string(*profile.kind)) : ordered_json(nullptr);
  j["meta"]["label"] = profile.label;
  j["meta"]["schema_version"] = std::string(kSchemaVersion);
  j["positions_m"] = profile.positions_m;
  ordered_json powers = ordered_json::array();
  for (double v : profile.power_db) powers.push_back(number_or_null(v));
  j["power_db"] = std::move(powers);
  return j.dump(2) + "\n";
}

PowerProfile profile_from_csv(std::string_view text, std::string label) {
  PowerProfile p;
  p.label = std::move(label);
  std::size_t line_no = 0;
  std::ptrdiff_t pos_col = -1;
  std::ptrdiff_t pow_col = -1;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (pos_col < 0) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c] == "position_m") pos_col = static_cast<std::ptrdiff_t>(c);
        if (cells[c] == "power_db") pow_col = static_cast<std::ptrdiff_t>(c);
      }
      if (pos_col < 0 || pow_col < 0) {
        throw ValidationError("row " + std::to_string(line_no) +
                              ": header must contain position_m and power_db columns");
      }
      continue;
    }
    const auto need = static_cast<std::size_t>(std::max(pos_col, pow_col));
    double x = 0.0;
    double y = 0.0;
    if (cells.size() <= need || !parse_double(cells[pos_col], x) ||
        !parse_double(cells[pow_col], y) || !std::isfinite(x) || std::isnan(y) ||
        y == std::numeric_limits<double>::infinity()) {
      throw ValidationError("row " + std::to_string(line_no) + ": malformed row '" +
                            std::string(line) + "'");
    }
    if (!p.positions_m.empty() && !(x > p.positions_m.back())) {
      throw ValidationError("row " + std::to_string(line_no) +
                            ": position_m is not strictly increasing");
    }
    p.positions_m.push_back(x);
    p.power_db.push_back(y);
  }
  if (pos_col < 0) throw ValidationError("row 1: missing CSV header");
  return p;
}

PowerProfile profile_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ValidationError(std::string("profile JSON: ") + e.what());
  }
  try {
    PowerProfile p;
    const auto& meta = j.at("meta");
    if (!meta.at("band").is_null()) p.band = parse_band(meta.at("band").get<std::string>());
    if (!meta.at("kind").is_null()) {
      p.kind = parse_reflector_kind(meta.at("kind").get<std::string>());
    }
    p.label = meta.at("label").get<std::string>();
    p.positions_m = j.at("positions_m").get<std::vector<double>>();
    for (const auto& v : j.at("power_db")) {
      p.power_db.push_back(v.is_null() ? -std::numeric_limits<double>::infinity()
                                       : v.get<double>());
    }
    validate(p);
    return p;
  } catch (const ordered_json::exception& e) {
    throw ValidationError(std::string("profile JSON: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void export_profile(const PowerProfile& profile, ProfileFormat format,
                    const std::filesystem::path& path) {
  write_text_file(path, format == ProfileFormat::kCsv ? profile_to_csv(profile)
                                                       : profile_to_json(profile));
}

PowerProfile import_measured(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  PowerProfile p = profile_from_csv(text, path.stem().string());
  validate(p);
  return p;
}

std::string stats_to_json(const ProfileStats& stats) { return stats_json(stats).dump(2) + "\n"; }

std::string report_to_json(const ComparisonReport& r) {
  ordered_json j;
  j["schema_version"] = std::string(kSchemaVersion);
  j["sim_label"] = r.sim_label;
  j["measured_label"] = r.measured_label;
  j["offset_db"] = r.offset_db;
  j["rmse_db"] = r.rmse_db;
  j["peak_position_delta_m"] = r.peak_position_delta_m;
  j["fringe_count_delta"] = r.fringe_count_delta;
  j["samples_compared"] = r.samples_compared;
  j["sim_stats"] = stats_json(r.sim_stats);
  j["measured_stats"] = stats_json(r.measured_stats);
  return j.dump(2) + "\n";
}

}  // namespace reflectsim
