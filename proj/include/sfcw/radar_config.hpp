#pragma once

#include <string>

namespace sfcw {

inline constexpr double kSpeedOfLight = 2.99792458e8;
inline constexpr double kPi = 3.14159265358979323846;

/// Frequency plan and array geometry of a MIMO SFCW radar. SI units throughout.
struct RadarConfig {
  double f0 = 6.3e9;      // start frequency
  int K = 137;            // frequency steps
  double B = 1.7e9;       // bandwidth
  int N = 8192;           // range-profile length
  double delta = 0.02;    // receive inter-antenna spacing
  double delta_t = 0.08;  // transmit inter-antenna spacing
  int M_r = 4;
  int M_t = 2;
  double f_st = 10.5;  // nominal slow-time rate
  double c = kSpeedOfLight;
  // Metadata only.
  double T = 14.3e-6 / 137.0;
  double T_K = 14.3e-6;

  int channels() const { return M_r * M_t; }
};

/// The 'Walabot' SENSOR-profile configuration.
RadarConfig walabot_config();

struct DerivedParams {
  double delta_f = 0;  // frequency step
  double f_c = 0;      // center frequency
  int M = 0;           // virtual channel count
  double d_max = 0;    // maximum unambiguous range
  double Delta_d = 0;  // two-target range resolution
  double delta_d = 0;  // range-profile granularity
  int K0 = 0;          // steps free of spatial aliasing
};

/// Throws ConfigError when the invariants of RadarConfig are violated.
/// Emits a warning if delta_t != M_r * delta (the virtual array is then not uniform).
void validate(const RadarConfig& cfg);

DerivedParams derive_params(const RadarConfig& cfg);

/// Frequency of step k.
inline double step_frequency(const RadarConfig& cfg, const DerivedParams& dp, int k) {
  return cfg.f0 + k * dp.delta_f;
}

struct PolarLocation {
  double d = 0;      // range, m
  double theta = 0;  // azimuth, rad; 0 is boresight
};

struct CartesianLocation {
  double x = 0;
  double y = 0;
};

CartesianLocation polar_to_cartesian(const PolarLocation& loc);
PolarLocation cartesian_to_polar(const CartesianLocation& loc);

/// Euclidean distance between two polar locations.
double distance(const PolarLocation& a, const PolarLocation& b);

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace sfcw
