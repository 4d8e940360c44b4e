#pragma once

#include "reflectsim/band.hpp"

namespace reflectsim {

/// Horn antenna main lobe: a quadratic-in-dB roll-off that loses exactly
/// 3 dB at half the HPBW in each plane, clamped at a flat sidelobe floor.
struct AntennaPattern {
  double boresight_gain_dbi = 0.0;
  double hpbw_az_deg = 0.0;
  double hpbw_el_deg = 0.0;
  double sidelobe_floor_db = -30.0;  // relative to boresight, <= -20

  bool operator==(const AntennaPattern&) const = default;
};

/// Throws ValidationError unless 0 < hpbw <= 180 in both planes and the
/// floor is at or below -20 dB.
void validate(const AntennaPattern& pattern);

/// Pattern gain in dBi at azimuth offset theta and elevation offset phi
/// (degrees from boresight).
double gain_db(const AntennaPattern& pattern, double theta_deg, double phi_deg);

/// Same as gain_db, linear power ratio.
double gain(const AntennaPattern& pattern, double theta_deg, double phi_deg);

/// Which horn plane is aligned with elevation. The sweep moves in the
/// azimuth plane, so by default the E-plane is vertical.
enum class PlaneMapping { kEPlaneElevation, kEPlaneAzimuth };

struct BandDefaults {
  Band band = Band::k28GHz;
  AntennaPattern tx_pattern;
  AntennaPattern rx_pattern;
  double tx_power_dbm = 0.0;
  double wavelength_m = 0.0;
  double e_plane_hpbw_deg = 0.0;
  double h_plane_hpbw_deg = 0.0;
};

/// Sounder parameters per carrier: horn gain, E/H-plane HPBW and TX power.
BandDefaults band_defaults(Band band, PlaneMapping mapping = PlaneMapping::kEPlaneElevation);

double dbm_to_mw(double dbm);
double db_to_linear(double db);
double linear_to_db(double ratio);

}  // namespace reflectsim
