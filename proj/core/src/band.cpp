#include "reflectsim/band.hpp"

#include <algorithm>
#include <cctype>

#include "reflectsim/error.hpp"

namespace reflectsim {

int band_ghz(Band band) {
  switch (band) {
    case Band::k28GHz:
      return 28;
    case Band::k39GHz:
      return 39;
    case Band::k120GHz:
      return 120;
  }
  throw ValidationError("unknown band");
}

double frequency_hz(Band band) { return band_ghz(band) * 1e9; }

double wavelength_m(Band band) { return kSpeedOfLight / frequency_hz(band); }

Band band_from_ghz(int ghz) {
  switch (ghz) {
    case 28:
      return Band::k28GHz;
    case 39:
      return Band::k39GHz;
    case 120:
      return Band::k120GHz;
    default:
      throw ValidationError("unknown band: " + std::to_string(ghz) +
                            " GHz (expected 28, 39 or 120)");
  }
}

Band parse_band(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (s.size() > 3 && s.ends_with("ghz")) s.resize(s.size() - 3);
  if (s == "28") return Band::k28GHz;
  if (s == "39") return Band::k39GHz;
  if (s == "120") return Band::k120GHz;
  throw ValidationError("unknown band: '" + std::string(text) + "' (expected 28, 39 or 120)");
}

std::string to_string(Band band) { return std::to_string(band_ghz(band)) + "GHz"; }

ReflectorKind parse_reflector_kind(std::string_view text) {
  if (text == "flat") return ReflectorKind::kFlat;
  if (text == "convex") return ReflectorKind::kConvex;
  throw ValidationError("unknown reflector kind: '" + std::string(text) +
                        "' (expected flat or convex)");
}

std::string to_string(ReflectorKind kind) {
  return kind == ReflectorKind::kFlat ? "flat" : "convex";
}

}  // namespace reflectsim
