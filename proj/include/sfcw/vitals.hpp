#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "sfcw/measurement.hpp"
#include "sfcw/radar_config.hpp"

namespace sfcw {

enum class WindowKind { Rectangular, Hann };

WindowKind parse_window_kind(const std::string& name);

/// Hann taper without zero end points: 0.5 (1 - cos(2 pi (n + 1) / (len + 1))), n = 0..len-1.
std::vector<double> make_window(WindowKind kind, int len);

struct SpatialFilter {
  Eigen::MatrixXcd H;  // K0 x M
  PolarLocation target;
  WindowKind range_window = WindowKind::Hann;
  WindowKind angle_window = WindowKind::Hann;
};

/// H = (w_K0 w_M^T) o A(d, theta) over the first K0 frequency steps.
SpatialFilter build_filter(const PolarLocation& target, const RadarConfig& cfg,
                           WindowKind range_window = WindowKind::Hann,
                           WindowKind angle_window = WindowKind::Hann);

struct VitalSeries {
  std::vector<double> time;  // slow-time stamps, s
  std::vector<double> eta;   // chest displacement, m
  std::vector<bool> unreliable;
  double f_st_actual = 0;
  int label = -1;
};

/// Adds multiples of 2 pi so that successive differences lie in (-pi, pi].
std::vector<double> unwrap_phase(std::span<const double> phase);

/// y(l) = vec(H)^H vec(S_l) over the first K0 rows, eta(l) = -c/(4 pi f_c) unwrap(arg y(l)).
/// Samples with |y| at the numeric floor are flagged and repeat the previous phase.
VitalSeries extract_displacement(const SpatialFilter& filter, const CubeView& segment, double f_c,
                                 double c = kSpeedOfLight);

struct BreathingBand {
  double lo = 0.1;
  double hi = 0.8;
};

struct BreathingSpectrum {
  std::vector<double> freq;
  std::vector<double> power;
};

/// Mean-removed periodogram of each series on a common grid with bin width
/// f_st / (zero_pad * length) taken from the first series, averaged over all series.
/// Uses the actual slow-time stamps, so jittered sampling is handled exactly.
BreathingSpectrum averaged_periodogram(std::span<const VitalSeries> series, BreathingBand band,
                                       int zero_pad = 8);

/// Frequency of the highest averaged periodogram bin inside the band.
double breathing_frequency(std::span<const VitalSeries> series, BreathingBand band = {},
                           int zero_pad = 8);

}  // namespace sfcw
