#pragma once

#include <array>
#include <string>
#include <string_view>

namespace reflectsim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

enum class Band { k28GHz, k39GHz, k120GHz };

inline constexpr std::array<Band, 3> kAllBands{Band::k28GHz, Band::k39GHz, Band::k120GHz};

double frequency_hz(Band band);
double wavelength_m(Band band);

/// Nominal carrier in GHz: 28, 39 or 120.
int band_ghz(Band band);

/// Accepts "28", "28GHz", "28 GHz", "28ghz" (and likewise for 39, 120).
/// Throws ValidationError for anything else.
Band parse_band(std::string_view text);
Band band_from_ghz(int ghz);

std::string to_string(Band band);

enum class ReflectorKind { kFlat, kConvex };

ReflectorKind parse_reflector_kind(std::string_view text);
std::string to_string(ReflectorKind kind);

}  // namespace reflectsim
