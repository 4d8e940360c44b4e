#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "reflectsim/metrics.hpp"

namespace reflectsim {

enum class ProfileFormat { kCsv, kJson };

ProfileFormat parse_profile_format(std::string_view text);
std::string to_string(ProfileFormat format);

inline constexpr std::string_view kSchemaVersion = "1";

/// Shortest decimal text that parses back to exactly `value`; "-inf"/"inf"
/// for infinities.
std::string format_number(double value);

/// `position_m,power_db` header, one newline-terminated row per sample.
std::string profile_to_csv(const PowerProfile& profile);

/// {"meta": {band, kind, label, schema_version}, "positions_m": [...],
///  "power_db": [...]}. -inf power is written as null.
std::string profile_to_json(const PowerProfile& profile);

PowerProfile profile_from_csv(std::string_view text, std::string label);
PowerProfile profile_from_json(std::string_view text);

/// Throws IoError when the file cannot be written.
void export_profile(const PowerProfile& profile, ProfileFormat format,
                    const std::filesystem::path& path);

/// Reads a CSV with `position_m` and `power_db` columns (others ignored).
/// The profile label is the file stem.
PowerProfile import_measured(const std::filesystem::path& path);

std::string stats_to_json(const ProfileStats& stats);
std::string report_to_json(const ComparisonReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace reflectsim
