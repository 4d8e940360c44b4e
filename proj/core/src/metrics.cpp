#include "reflectsim/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "reflectsim/error.hpp"

namespace reflectsim {
namespace {

// -inf samples would poison the moving average; analysis substitutes the
// lowest finite level instead.
std::vector<double> finite_floor(std::span<const double> values) {
  double lo = std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (std::isfinite(v)) lo = std::min(lo, v);
  }
  std::vector<double> out(values.begin(), values.end());
  if (!std::isfinite(lo)) lo = 0.0;
  for (double& v : out) {
    if (!std::isfinite(v)) v = lo;
  }
  return out;
}

void check_options(const AnalysisOptions& o) {
  if (o.smoothing_window < 1 || o.smoothing_window % 2 == 0) {
    throw ValidationError("smoothing_window must be a positive odd sample count");
  }
  if (!(o.fringe_prominence_db > 0.0)) {
    throw ValidationError("fringe_prominence_db must be > 0");
  }
}

double interpolate(const PowerProfile& p, double x) {
  const auto& xs = p.positions_m;
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) return std::numeric_limits<double>::quiet_NaN();
  const auto k = static_cast<std::size_t>(it - xs.begin());
  if (*it == x) return p.power_db[k];
  if (k == 0) return std::numeric_limits<double>::quiet_NaN();
  const double x0 = xs[k - 1];
  const double x1 = xs[k];
  const double y0 = p.power_db[k - 1];
  const double y1 = p.power_db[k];
  if (!std::isfinite(y0) || !std::isfinite(y1)) return std::numeric_limits<double>::quiet_NaN();
  return y0 + (x - x0) / (x1 - x0) * (y1 - y0);
}

}  // namespace

void validate(const PowerProfile& p) {
  if (p.positions_m.size() != p.power_db.size()) {
    throw ValidationError("profile: positions and powers differ in length");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p.positions_m[i])) {
      throw ValidationError("profile: non-finite position at sample " + std::to_string(i));
    }
    if (i > 0 && !(p.positions_m[i] > p.positions_m[i - 1])) {
      throw ValidationError("profile: positions not strictly increasing at sample " +
                            std::to_string(i));
    }
    const double v = p.power_db[i];
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw ValidationError("profile: invalid power at sample " + std::to_string(i));
    }
  }
}

std::vector<double> smooth_envelope(std::span<const double> values, int window) {
  if (window < 1 || window % 2 == 0) {
    throw ValidationError("smoothing window must be a positive odd sample count");
  }
  const std::ptrdiff_t n = std::ssize(values);
  const std::ptrdiff_t half = window / 2;
  std::vector<double> out(values.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t reach = std::min({half, i, n - 1 - i});
    double sum = 0.0;
    for (std::ptrdiff_t k = i - reach; k <= i + reach; ++k) sum += values[k];
    out[i] = sum / static_cast<double>(2 * reach + 1);
  }
  return out;
}

std::vector<std::size_t> find_prominent_peaks(std::span<const double> x, double min_prominence) {
  std::vector<std::size_t> peaks;
  const std::size_t n = x.size();
  if (n < 3) return peaks;
  std::size_t i = 1;
  while (i + 1 < n) {
    if (x[i - 1] < x[i]) {
      std::size_t ahead = i + 1;
      while (ahead + 1 < n && x[ahead] == x[i]) ++ahead;
      if (x[ahead] < x[i]) {
        peaks.push_back((i + ahead - 1) / 2);
        i = ahead;
        continue;
      }
    }
    ++i;
  }

  std::vector<std::size_t> kept;
  for (std::size_t p : peaks) {
    const double h = x[p];
    double left_min = h;
    for (std::size_t k = p + 1; k-- > 0;) {
      if (x[k] > h) break;
      left_min = std::min(left_min, x[k]);
    }
    double right_min = h;
    for (std::size_t k = p; k < n; ++k) {
      if (x[k] > h) break;
      right_min = std::min(right_min, x[k]);
    }
    if (h - std::max(left_min, right_min) >= min_prominence) kept.push_back(p);
  }
  return kept;
}

int count_fringes(std::span<const double> power_db, const AnalysisOptions& options) {
  check_options(options);
  const std::vector<double> x = finite_floor(power_db);
  const std::vector<double> env = smooth_envelope(x, options.smoothing_window);
  std::vector<double> residual(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) residual[i] = x[i] - env[i];
  return static_cast<int>(find_prominent_peaks(residual, options.fringe_prominence_db).size());
}

ProfileStats analyze(const PowerProfile& profile, const AnalysisOptions& options) {
  validate(profile);
  check_options(options);
  if (profile.size() < kMinAnalysisSamples) {
    throw ValidationError("profile: analysis needs at least " +
                          std::to_string(kMinAnalysisSamples) + " samples, got " +
                          std::to_string(profile.size()));
  }
  ProfileStats s;
  s.band = profile.band;
  const auto& p = profile.power_db;
  const auto peak = std::max_element(p.begin(), p.end());
  s.peak_index = static_cast<std::size_t>(peak - p.begin());
  s.peak_db = *peak;
  s.peak_position_m = profile.positions_m[s.peak_index];
  if (!std::isfinite(s.peak_db)) return s;

  const std::vector<double> x = finite_floor(p);
  const std::vector<double> env = smooth_envelope(x, options.smoothing_window);
  const auto [lo, hi] = std::minmax_element(env.begin(), env.end());
  s.envelope_dynamic_range_db = *hi - *lo;
  s.rhs_decay_db = env.back() - env[s.peak_index];
  s.fringe_count = count_fringes(p, options);
  return s;
}

double max_envelope_rise(const PowerProfile& profile, std::size_t from, std::size_t to,
                         const AnalysisOptions& options) {
  validate(profile);
  check_options(options);
  if (from >= profile.size() || to >= profile.size()) {
    throw ValidationError("envelope rise: sample index out of range");
  }
  const std::vector<double> env =
      smooth_envelope(finite_floor(profile.power_db), options.smoothing_window);
  double running_min = env[from];
  double rise = 0.0;
  const std::ptrdiff_t step = to >= from ? 1 : -1;
  for (auto i = static_cast<std::ptrdiff_t>(from);; i += step) {
    running_min = std::min(running_min, env[i]);
    rise = std::max(rise, env[i] - running_min);
    if (i == static_cast<std::ptrdiff_t>(to)) break;
  }
  return rise;
}

ComparisonReport compare(const PowerProfile& sim, const PowerProfile& measured,
                         const AnalysisOptions& options) {
  validate(sim);
  validate(measured);
  if (sim.size() == 0 || measured.size() == 0) throw ValidationError("compare: empty profile");
  const double lo = std::max(sim.positions_m.front(), measured.positions_m.front());
  const double hi = std::min(sim.positions_m.back(), measured.positions_m.back());
  if (lo > hi) throw ValidationError("compare: position ranges are disjoint");

  std::vector<double> diff;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double x = measured.positions_m[i];
    if (x < lo || x > hi) continue;
    const double s = interpolate(sim, x);
    const double m = measured.power_db[i];
    if (std::isfinite(s) && std::isfinite(m)) diff.push_back(m - s);
  }
  if (diff.empty()) throw ValidationError("compare: no overlapping finite samples");

  ComparisonReport r;
  r.sim_label = sim.label;
  r.measured_label = measured.label;
  r.samples_compared = diff.size();
  double sum = 0.0;
  for (double d : diff) sum += d;
  r.offset_db = sum / static_cast<double>(diff.size());
  double sq = 0.0;
  for (double d : diff) sq += (d - r.offset_db) * (d - r.offset_db);
  r.rmse_db = std::sqrt(sq / static_cast<double>(diff.size()));

  r.sim_stats = analyze(sim, options);
  r.measured_stats = analyze(measured, options);
  r.peak_position_delta_m = r.sim_stats.peak_position_m - r.measured_stats.peak_position_m;
  r.fringe_count_delta = r.sim_stats.fringe_count - r.measured_stats.fringe_count;
  return r;
}

double flat_vs_convex_gap(const ProfileStats& flat, const ProfileStats& convex) {
  if (flat.band && convex.band && *flat.band != *convex.band) {
    throw ValidationError("flat_vs_convex_gap: profiles come from different bands");
  }
  return flat.peak_db - convex.peak_db;
}

namespace {

constexpr std::array<MeasuredPeak, 12> kMeasuredPeaks{{
    {Band::k28GHz, ReflectorKind::kFlat, Material::kTransparent, -49.61},
    {Band::k39GHz, ReflectorKind::kFlat, Material::kTransparent, -47.36},
    {Band::k120GHz, ReflectorKind::kFlat, Material::kTransparent, -43.13},
    {Band::k28GHz, ReflectorKind::kFlat, Material::kMetal, -54.00},
    {Band::k39GHz, ReflectorKind::kFlat, Material::kMetal, -55.36},
    {Band::k120GHz, ReflectorKind::kFlat, Material::kMetal, -39.95},
    {Band::k28GHz, ReflectorKind::kConvex, Material::kTransparent, -71.40},
    {Band::k39GHz, ReflectorKind::kConvex, Material::kTransparent, -78.35},
    {Band::k120GHz, ReflectorKind::kConvex, Material::kTransparent, -54.33},
    {Band::k28GHz, ReflectorKind::kConvex, Material::kMetal, -74.69},
    {Band::k39GHz, ReflectorKind::kConvex, Material::kMetal, -76.72},
    {Band::k120GHz, ReflectorKind::kConvex, Material::kMetal, -58.36},
}};

}  // namespace

std::span<const MeasuredPeak> measured_peaks() { return kMeasuredPeaks; }

double measured_peak(Band band, ReflectorKind kind, Material material) {
  for (const MeasuredPeak& m : kMeasuredPeaks) {
    if (m.band == band && m.kind == kind && m.material == material) return m.peak_db;
  }
  throw ValidationError("no measured peak for the requested combination");
}

double measured_gap(Band band, Material material) {
  return measured_peak(band, ReflectorKind::kFlat, material) -
         measured_peak(band, ReflectorKind::kConvex, material);
}

}  // namespace reflectsim
