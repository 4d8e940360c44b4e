#include "reflectsim/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reflectsim/error.hpp"

namespace reflectsim {

void validate(const AntennaPattern& p) {
  auto ok_bw = [](double bw) { return std::isfinite(bw) && bw > 0.0 && bw <= 180.0; };
  if (!ok_bw(p.hpbw_az_deg) || !ok_bw(p.hpbw_el_deg)) {
    throw ValidationError("antenna HPBW must lie in (0, 180] degrees");
  }
  if (!std::isfinite(p.boresight_gain_dbi)) {
    throw ValidationError("antenna boresight gain must be finite");
  }
  if (!(p.sidelobe_floor_db <= -20.0)) {
    throw ValidationError("antenna sidelobe floor must be <= -20 dB");
  }
}

double gain_db(const AntennaPattern& p, double theta_deg, double phi_deg) {
  const double a = theta_deg / p.hpbw_az_deg;
  const double e = phi_deg / p.hpbw_el_deg;
  const double loss = 12.0 * a * a + 12.0 * e * e;
  return p.boresight_gain_dbi - std::min(loss, std::abs(p.sidelobe_floor_db));
}

double gain(const AntennaPattern& p, double theta_deg, double phi_deg) {
  return db_to_linear(gain_db(p, theta_deg, phi_deg));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_mw(double dbm) { return db_to_linear(dbm); }

double linear_to_db(double ratio) {
  if (ratio <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(ratio);
}

BandDefaults band_defaults(Band band, PlaneMapping mapping) {
  BandDefaults d;
  d.band = band;
  d.wavelength_m = wavelength_m(band);
  double gain_dbi = 0.0;
  switch (band) {
    case Band::k28GHz:
      gain_dbi = 17.0;
      d.tx_power_dbm = -10.0;
      d.e_plane_hpbw_deg = 26.0;
      d.h_plane_hpbw_deg = 24.0;
      break;
    case Band::k39GHz:
      gain_dbi = 20.0;
      d.tx_power_dbm = -10.0;
      d.e_plane_hpbw_deg = 15.0;
      d.h_plane_hpbw_deg = 16.0;
      break;
    case Band::k120GHz:
      gain_dbi = 21.0;
      d.tx_power_dbm = 10.0;
      d.e_plane_hpbw_deg = 13.0;
      d.h_plane_hpbw_deg = 13.0;
      break;
  }
  AntennaPattern p;
  p.boresight_gain_dbi = gain_dbi;
  if (mapping == PlaneMapping::kEPlaneElevation) {
    p.hpbw_el_deg = d.e_plane_hpbw_deg;
    p.hpbw_az_deg = d.h_plane_hpbw_deg;
  } else {
    p.hpbw_el_deg = d.h_plane_hpbw_deg;
    p.hpbw_az_deg = d.e_plane_hpbw_deg;
  }
  d.tx_pattern = p;
  d.rx_pattern = p;
  return d;
}

}  // namespace reflectsim
