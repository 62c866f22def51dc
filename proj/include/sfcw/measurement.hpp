#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "sfcw/radar_config.hpp"

namespace sfcw {

using cd = std::complex<double>;
using RowMajorMatrixXcd = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstSnapshot = Eigen::Map<const RowMajorMatrixXcd>;

/// Reference location and breathing rate of one person.
struct TruthPerson {
  PolarLocation location;
  double breath_freq = 0;
};

struct GroundTruth {
  std::vector<TruthPerson> persons;
};

/// Non-owning view of L consecutive slow-time samples of a cube.
/// Samples are row-major [l][k][m].
class CubeView {
 public:
  CubeView() = default;
  CubeView(std::span<const cd> samples, std::span<const double> slow_time, int K, int M);

  int L() const { return static_cast<int>(slow_time_.size()); }
  int K() const { return K_; }
  int M() const { return M_; }

  const cd& at(int l, int k, int m) const {
    return samples_[(static_cast<std::size_t>(l) * K_ + k) * M_ + m];
  }
  /// K x M signal matrix of slow-time sample l.
  ConstSnapshot snapshot(int l) const {
    return ConstSnapshot(samples_.data() + static_cast<std::size_t>(l) * K_ * M_, K_, M_);
  }
  std::span<const cd> samples() const { return samples_; }
  std::span<const double> slow_time() const { return slow_time_; }

  /// Sub-view of n samples starting at l0.
  CubeView slice(int l0, int n) const;

  /// Rate implied by the slow-time stamps; 0 when fewer than two samples.
  double sampling_rate() const;

 private:
  std::span<const cd> samples_;
  std::span<const double> slow_time_;
  int K_ = 0;
  int M_ = 0;
};

/// Stepped-frequency samples indexed [l][k][m] with slow-time stamps.
struct MeasurementCube {
  RadarConfig config;
  int L = 0;
  int K = 0;
  int M = 0;
  std::vector<cd> samples;
  std::vector<double> slow_time;
  std::optional<GroundTruth> ground_truth;

  MeasurementCube() = default;
  MeasurementCube(const RadarConfig& cfg, int L, int K, int M);

  cd& at(int l, int k, int m) { return samples[(static_cast<std::size_t>(l) * K + k) * M + m]; }
  const cd& at(int l, int k, int m) const {
    return samples[(static_cast<std::size_t>(l) * K + k) * M + m];
  }

  CubeView view() const { return CubeView(samples, slow_time, K, M); }

  /// Throws DataError when dims, payload size or slow-time ordering are inconsistent.
  void check() const;
};

}  // namespace sfcw
