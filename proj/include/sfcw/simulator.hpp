#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "sfcw/measurement.hpp"
#include "sfcw/radar_config.hpp"

namespace sfcw {

/// A person as a point reflector with sinusoidal breathing and heartbeat chest motion.
struct PersonModel {
  PolarLocation location;
  std::complex<double> amplitude{1.0, 0.0};
  double breath_freq = 0.3;   // Hz
  double breath_amp = 4e-3;   // m
  double heart_freq = 1.2;    // Hz
  double heart_amp = 0.3e-3;  // m
  double breath_phase = 0.0;  // rad
  double heart_phase = 0.0;   // rad
};

struct StaticReflector {
  PolarLocation location;
  std::complex<double> gain{1.0, 0.0};
};

struct ClutterModel {
  std::vector<StaticReflector> static_reflectors;
  double noise_std = 0.0;  // per-sample complex noise standard deviation
  std::uint64_t seed = 1;
};

struct Scene {
  std::vector<PersonModel> persons;
  ClutterModel clutter;
  int L = 200;
  double f_st = 10.0;
  /// Slow-time stamp jitter as a fraction of the sampling period, in [0, 0.5).
  double jitter = 0.0;
};

/// Synthesizes the normalized stepped-frequency signal for every (l, k, m) directly in the
/// frequency domain, plus static reflectors and circular complex Gaussian noise.
/// Deterministic for a given clutter seed; rows use RNG substreams seeded by (seed, l).
MeasurementCube simulate(const Scene& scene, const RadarConfig& cfg);

/// Round-trip delay of a person at slow time t on virtual channel m.
double person_delay(const PersonModel& p, const RadarConfig& cfg, int m, double t);

/// |(1/K) sum_k s(k) exp(j 2 pi k n / N)| for n = 0..N-1.
std::vector<double> range_profile(std::span<const cd> snapshot, int N);

/// The complex (pre-magnitude) range profile.
std::vector<cd> complex_range_profile(std::span<const cd> snapshot, int N);

}  // namespace sfcw
