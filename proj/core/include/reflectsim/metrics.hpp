#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reflectsim/band.hpp"

namespace reflectsim {

/// Received power versus RX position along the positioner.
/// Positions strictly increase; power may hold -inf where nothing arrives.
struct PowerProfile {
  std::vector<double> positions_m;
  std::vector<double> power_db;
  std::optional<Band> band;
  std::optional<ReflectorKind> kind;
  std::string label;

  [[nodiscard]] std::size_t size() const { return positions_m.size(); }
};

void validate(const PowerProfile& profile);

struct AnalysisOptions {
  int smoothing_window = 51;          // samples, odd
  double fringe_prominence_db = 1.0;

  bool operator==(const AnalysisOptions&) const = default;
};

inline constexpr std::size_t kMinAnalysisSamples = 101;

struct ProfileStats {
  double peak_db = 0.0;
  double peak_position_m = 0.0;
  std::size_t peak_index = 0;
  int fringe_count = 0;
  double envelope_dynamic_range_db = 0.0;
  /// Smoothed power at the sweep end minus smoothed power at the peak.
  double rhs_decay_db = 0.0;
  std::optional<Band> band;
};

/// Centered moving average; the window shrinks symmetrically near the ends.
std::vector<double> smooth_envelope(std::span<const double> values, int window);

/// Indices of local maxima (plateaus resolved to their middle sample) whose
/// topographic prominence reaches min_prominence.
std::vector<std::size_t> find_prominent_peaks(std::span<const double> values,
                                              double min_prominence);

/// Fringes are prominent maxima of the profile minus its smoothed envelope.
int count_fringes(std::span<const double> power_db, const AnalysisOptions& options = {});

ProfileStats analyze(const PowerProfile& profile, const AnalysisOptions& options = {});

/// Largest increase of the smoothed envelope over its running minimum while
/// walking from sample `from` to sample `to` (either direction).
double max_envelope_rise(const PowerProfile& profile, std::size_t from, std::size_t to,
                         const AnalysisOptions& options = {});

struct ComparisonReport {
  std::string sim_label;
  std::string measured_label;
  /// Scalar shift that best maps sim onto measured in the least-squares sense.
  double offset_db = 0.0;
  double rmse_db = 0.0;
  double peak_position_delta_m = 0.0;  // sim - measured
  int fringe_count_delta = 0;          // sim - measured
  std::size_t samples_compared = 0;
  ProfileStats sim_stats;
  ProfileStats measured_stats;
};

/// Sim is linearly interpolated onto the measured positions inside the
/// overlapping range; non-finite samples are skipped.
ComparisonReport compare(const PowerProfile& sim, const PowerProfile& measured,
                         const AnalysisOptions& options = {});

/// Peak power of the flat profile minus that of the convex profile.
double flat_vs_convex_gap(const ProfileStats& flat, const ProfileStats& convex);

enum class Material { kMetal, kTransparent };

/// Maximum reflected power measured with the channel sounder (uncalibrated
/// dB scale; only within-band differences are meaningful).
struct MeasuredPeak {
  Band band;
  ReflectorKind kind;
  Material material;
  double peak_db;
};

std::span<const MeasuredPeak> measured_peaks();
double measured_peak(Band band, ReflectorKind kind, Material material);
double measured_gap(Band band, Material material);

}  // namespace reflectsim
