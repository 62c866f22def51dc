#include "sfcw/simulator.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <unsupported/Eigen/FFT>

#include "sfcw/errors.hpp"
#include "sfcw/parallel.hpp"

namespace sfcw {
namespace {

void check_scene(const Scene& scene, const DerivedParams& dp) {
  if (scene.L < 1) throw ArgumentError("scene: L must be >= 1");
  if (!(scene.f_st > 0)) throw ArgumentError("scene: f_st must be positive");
  if (scene.clutter.noise_std < 0) throw ArgumentError("scene: noise_std must be >= 0");
  if (scene.jitter < 0 || scene.jitter >= 0.5) throw ArgumentError("scene: jitter must be in [0, 0.5)");
  for (std::size_t i = 0; i < scene.persons.size(); ++i) {
    const auto& p = scene.persons[i];
    if (p.location.d < 0 || std::abs(p.location.theta) >= kPi / 2)
      throw ArgumentError("scene: person " + std::to_string(i) + " has an invalid location");
    if (p.breath_amp < 0 || p.heart_amp < 0)
      throw ArgumentError("scene: person " + std::to_string(i) + " has a negative amplitude");
    if (p.breath_freq < 0 || p.breath_freq >= scene.f_st / 2)
      throw ArgumentError("scene: person " + std::to_string(i) + " breathing rate outside (0, f_st/2)");
    if (p.location.d > dp.d_max) {
      std::ostringstream w;
      w << "person " << i << " at " << p.location.d << " m is beyond d_max = " << dp.d_max
        << " m; range aliasing expected";
      warn(w.str());
    }
  }
}

std::vector<double> slow_time_stamps(const Scene& scene) {
  std::vector<double> t(scene.L);
  std::seed_seq seq{scene.clutter.seed, std::uint64_t{0x51ed}};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(-scene.jitter, scene.jitter);
  for (int l = 0; l < scene.L; ++l) {
    const double offset = scene.jitter > 0 ? u(rng) : 0.0;
    t[l] = (l + offset) / scene.f_st;
  }
  return t;
}

}  // namespace

double person_delay(const PersonModel& p, const RadarConfig& cfg, int m, double t) {
  const double loc = (2.0 * p.location.d + m * cfg.delta * std::sin(p.location.theta)) / cfg.c;
  const double x = p.breath_amp * std::sin(2 * kPi * p.breath_freq * t + p.breath_phase) +
                   p.heart_amp * std::sin(2 * kPi * p.heart_freq * t + p.heart_phase);
  return loc + 2.0 * x / cfg.c;
}

MeasurementCube simulate(const Scene& scene, const RadarConfig& cfg) {
  const DerivedParams dp = derive_params(cfg);
  check_scene(scene, dp);

  const int K = cfg.K;
  const int M = dp.M;
  MeasurementCube cube(cfg, scene.L, K, M);
  cube.slow_time = slow_time_stamps(scene);

  std::vector<double> freqs(K);
  for (int k = 0; k < K; ++k) freqs[k] = step_frequency(cfg, dp, k);

  // Static reflector contribution is identical for every l.
  std::vector<cd> static_part(static_cast<std::size_t>(K) * M, cd{0, 0});
  for (const auto& r : scene.clutter.static_reflectors) {
    for (int m = 0; m < M; ++m) {
      const double tau = (2.0 * r.location.d + m * cfg.delta * std::sin(r.location.theta)) / cfg.c;
      for (int k = 0; k < K; ++k) {
        static_part[k * M + m] += r.gain * std::polar(1.0, -2 * kPi * freqs[k] * tau);
      }
    }
  }

  const double sigma = scene.clutter.noise_std / std::sqrt(2.0);
  parallel_for(static_cast<std::size_t>(scene.L), [&](std::size_t l) {
    const double t = cube.slow_time[l];
    cd* row = cube.samples.data() + l * static_cast<std::size_t>(K) * M;
    for (int i = 0; i < K * M; ++i) row[i] = static_part[i];
    for (const auto& p : scene.persons) {
      for (int m = 0; m < M; ++m) {
        const double tau = person_delay(p, cfg, m, t);
        for (int k = 0; k < K; ++k) {
          row[k * M + m] += p.amplitude * std::polar(1.0, -2 * kPi * freqs[k] * tau);
        }
      }
    }
    if (sigma > 0) {
      std::seed_seq seq{scene.clutter.seed, static_cast<std::uint64_t>(l)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> gauss(0.0, sigma);
      for (int i = 0; i < K * M; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        row[i] += cd{re, im};
      }
    }
  });

  GroundTruth truth;
  for (const auto& p : scene.persons) truth.persons.push_back({p.location, p.breath_freq});
  cube.ground_truth = truth;
  return cube;
}

std::vector<cd> complex_range_profile(std::span<const cd> snapshot, int N) {
  const int K = static_cast<int>(snapshot.size());
  if (N < K) throw ArgumentError("range_profile: N must be >= K");
  if (K == 0) return std::vector<cd>(N, cd{0, 0});
  std::vector<cd> padded(N, cd{0, 0});
  std::copy(snapshot.begin(), snapshot.end(), padded.begin());
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<cd> out;
  fft.inv(out, padded);
  for (auto& v : out) v /= static_cast<double>(K);
  return out;
}

std::vector<double> range_profile(std::span<const cd> snapshot, int N) {
  const auto z = complex_range_profile(snapshot, N);
  std::vector<double> r(z.size());
  for (std::size_t n = 0; n < z.size(); ++n) r[n] = std::abs(z[n]);
  return r;
}

}  // namespace sfcw
