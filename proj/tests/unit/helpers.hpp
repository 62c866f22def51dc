#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sfcw/errors.hpp"
#include "sfcw/measurement.hpp"
#include "sfcw/radar_config.hpp"

namespace testutil {

using cd = std::complex<double>;

// Small deterministic generator for randomized cases.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  cd complex_normal() { return {normal(), normal()}; }
  std::vector<cd> complex_vector(std::size_t n) {
    std::vector<cd> v(n);
    for (auto& x : v) x = complex_normal();
    return v;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline constexpr int kCases = 100;

// Collects warnings for the lifetime of the object.
struct WarningCapture {
  std::vector<std::string> messages;
  WarningCapture() {
    sfcw::set_warning_sink([this](const std::string& m) { messages.push_back(m); });
  }
  ~WarningCapture() { sfcw::set_warning_sink({}); }
};

// Walabot-like config resized to K steps and M single-transmitter channels.
inline sfcw::RadarConfig small_config(int K, int M) {
  sfcw::RadarConfig cfg = sfcw::walabot_config();
  cfg.B = cfg.B / cfg.K * K;
  cfg.K = K;
  cfg.M_r = M;
  cfg.M_t = 1;
  cfg.delta_t = M * cfg.delta;
  return cfg;
}

inline sfcw::MeasurementCube blank_cube(int L, int K, int M, double f_st = 10.0) {
  sfcw::MeasurementCube cube(small_config(K, M), L, K, M);
  for (int l = 0; l < L; ++l) cube.slow_time[l] = l / f_st;
  return cube;
}

inline sfcw::MeasurementCube constant_cube(int L, int K, int M, cd value) {
  auto cube = blank_cube(L, K, M);
  for (auto& s : cube.samples) s = value;
  return cube;
}

inline double max_abs(const std::vector<cd>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace testutil
