#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace reflectsim::oracle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kC = 299792458.0;

double rad(double deg) { return deg * kPi / 180.0; }

// Mismatch between incidence and reflection angles at the origin for a
// reflector facing +y, signed so that it changes sign across the specular
// point.
double angle_mismatch(const Vec3& tx, const Vec3& rx) {
  const double in = std::atan2(tx.x, tx.y);
  const double out = std::atan2(rx.x, rx.y);
  return in + out;
}

}  // namespace

std::vector<double> grid_offsets(double side, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back((2 * k + 1 - n) * side / (2.0 * n));
  return out;
}

Vec3 brute_force_specular(const Vec3& tx, const Vec3& sweep_start, const Vec3& sweep_end) {
  const int samples = 200000;
  const Vec3 span = sweep_end - sweep_start;
  double best_t = 0.0;
  double best = 1e300;
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const double m = std::abs(angle_mismatch(tx, sweep_start + span * t));
    if (m < best) {
      best = m;
      best_t = t;
    }
  }
  double lo = std::max(0.0, best_t - 1.0 / samples);
  double hi = std::min(1.0, best_t + 1.0 / samples);
  for (int it = 0; it < 200; ++it) {
    const double a = lo + (hi - lo) / 3;
    const double b = hi - (hi - lo) / 3;
    if (std::abs(angle_mismatch(tx, sweep_start + span * a)) <
        std::abs(angle_mismatch(tx, sweep_start + span * b))) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return sweep_start + span * ((lo + hi) / 2);
}

double image_source_distance(double tx_range, double rx_range, double incidence_deg) {
  // TX mirrored through the reflector plane (y -> -y); the specular RX lies
  // on the far side of the normal at the same angle.
  const double th = rad(incidence_deg);
  const double ix = -tx_range * std::sin(th);
  const double iy = -tx_range * std::cos(th);
  const double rx = rx_range * std::sin(th);
  const double ry = rx_range * std::cos(th);
  return std::hypot(rx - ix, ry - iy);
}

double footprint_alpha(double range, double hpbw_az_deg, double hpbw_el_deg,
                       double incidence_deg, double width, double height) {
  const double a = range * std::tan(rad(hpbw_az_deg / 2));
  const double b = range * std::tan(rad(hpbw_el_deg / 2)) / std::cos(rad(incidence_deg));
  const double ellipse = kPi * a * b;
  const double area = width * height * std::cos(rad(incidence_deg));
  const double r = area / ellipse;
  return r > 1.0 ? 1.0 : r;
}

double friis_dbm(double tx_power_dbm, double gain_tx_dbi, double gain_rx_dbi,
                 double frequency_hz, double distance) {
  const double lambda = kC / frequency_hz;
  const double p_mw = std::pow(10.0, tx_power_dbm / 10);
  const double g = std::pow(10.0, gain_tx_dbi / 10) * std::pow(10.0, gain_rx_dbi / 10);
  const double ratio = lambda / (4 * kPi * distance);
  return 10 * std::log10(p_mw * g * ratio * ratio);
}

double capture_length(double distance, double hpbw_deg) {
  return 2 * distance * std::tan(rad(hpbw_deg) / 2);
}

std::vector<double> sinusoid(std::size_t n, double periods, double amplitude_db) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = amplitude_db * std::sin(2 * kPi * periods * static_cast<double>(i) / n);
  }
  return out;
}

std::vector<double> with_gaussian_noise(const std::vector<double>& values, double sigma,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> out = values;
  for (double& v : out) v += noise(rng);
  return out;
}

double fringe_ratio_from_path_difference(double f_high_hz, double f_low_hz) {
  // Fringe period in RX position is lambda / (d(path difference)/dx); the
  // slope is set by geometry alone, so fringe counts scale with 1/lambda.
  return (kC / f_low_hz) / (kC / f_high_hz);
}

}  // namespace reflectsim::oracle
