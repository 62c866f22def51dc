#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sfcw/measurement.hpp"
#include "sfcw/radar_config.hpp"

namespace sfcw {

/// Sub-band x sub-array window used for spatial smoothing.
struct SmoothingSpec {
  int W_K = 38;
  int W_M = 2;

  int dimension() const { return W_K * W_M; }
  /// Number of slices (K_used - W_K + 1) * (M - W_M + 1).
  int slice_count(int K_used, int M) const { return (K_used - W_K + 1) * (M - W_M + 1); }
  /// Throws ArgumentError unless 1 <= W_K <= K_used and 1 <= W_M <= M.
  void check(int K_used, int M) const;
};

struct CovarianceEstimate {
  Eigen::MatrixXcd R;          // forward-backward averaged, Hermitian, persymmetric
  Eigen::VectorXd eigvals;     // descending
  Eigen::MatrixXcd eigvecs;    // columns match eigvals
  int n_snapshots = 0;
  int n_slices = 0;
};

/// Slow-time sample indices used as covariance snapshots: n_cov points at the centers of
/// n_cov equal sub-intervals of [0, L).
std::vector<int> snapshot_indices(int L, int n_cov);

/// Stacks all W_K x W_M slices of one K x M snapshot as columns (first index fastest,
/// each slice vectorized column-wise).
Eigen::MatrixXcd slice_matrix(const ConstSnapshot& S, const SmoothingSpec& spec);

/// 1/2 (R + J R^H J) with the exchange matrix J.
Eigen::MatrixXcd forward_backward(const Eigen::MatrixXcd& R);

/// Descending Hermitian eigen-decomposition; ties ordered by original index.
void decompose(CovarianceEstimate& cov);

/// Spatially smoothed, forward-backward averaged covariance of a segment, averaged over
/// n_cov snapshots, followed by its eigen-decomposition. Uses all K frequency steps.
CovarianceEstimate smoothed_covariance(const CubeView& segment, const SmoothingSpec& spec, int n_cov);

/// W_K x W_M steering matrix; entry (k, m) = exp(-j 2 pi (f0 + k df)(2d + m delta sin theta)/c).
/// Nonzero offsets return the block of the full-array steering matrix starting at
/// (k_offset, m_offset) instead (fractional offsets allowed).
Eigen::MatrixXcd steering_matrix(double d, double theta, int W_K, int W_M, const RadarConfig& cfg,
                                 double k_offset = 0.0, double m_offset = 0.0);

/// Column-wise vectorization of steering_matrix.
Eigen::VectorXcd steering_vector(double d, double theta, int W_K, int W_M, const RadarConfig& cfg,
                                 double k_offset = 0.0, double m_offset = 0.0);

/// Which slice of the full array the MUSIC steering vector is referenced to.
/// The smoothed covariance mixes sub-bands starting anywhere in f0 .. f0 + (K - W_K) df, and the
/// angle term scales with the sub-band start frequency, so referencing the first slice pulls
/// off-broadside peaks outward by roughly (K - W_K)/2 df / f0 in sin(theta). Centered uses the
/// mean slice offset ((K - W_K)/2, (M - W_M)/2).
enum class SteeringReference { Centered, FirstSlice };

SteeringReference parse_steering_reference(const std::string& name);

/// Range/angle search grid. Dimensions floor(d_hi/d_step + 1) x floor(2 theta_max/theta_step + 1).
struct GridSpec {
  double d_hi = 4.5;
  double d_step = 0.025;
  double theta_max = 0.4 * kPi;
  double theta_step = kPi / 180.0;

  int n_d() const;
  int n_theta() const;
  double d_at(int i) const { return i * d_step; }
  double theta_at(int j) const { return -theta_max + j * theta_step; }
  void check() const;
  bool operator==(const GridSpec& o) const = default;
};

/// MUSIC values over the grid, row-major [d][theta].
struct PseudoSpectrum {
  GridSpec grid;
  std::vector<double> values;

  static PseudoSpectrum zeros(const GridSpec& grid);
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n_theta() + j]; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n_theta() + j]; }
};

/// 1 / |a^H V_n V_n^H a| where V_n holds eigenvectors P_sub+1..end. Grid rows are evaluated in
/// parallel; each cell is an independent function of (d, theta).
PseudoSpectrum music_spectrum(const CovarianceEstimate& cov, int P_sub, int W_K, int W_M,
                              const GridSpec& grid, const RadarConfig& cfg,
                              SteeringReference ref = SteeringReference::Centered);

/// Elementwise sum; grids must match.
PseudoSpectrum accumulate_spectrum(const PseudoSpectrum& running, const PseudoSpectrum& current);

struct Detection {
  PolarLocation location;
  double value = 0;
  int merged = 0;  // neighbouring peaks folded into this one
};

struct DetectionSet {
  std::vector<Detection> detections;
  int segment_index = -1;
  bool short_of_target = false;  // fewer than the requested number of peaks were found
};

/// 8-neighbourhood local maxima, sorted by value (ties by grid index).
std::vector<Detection> local_maxima(const PseudoSpectrum& spectrum);

/// Greedily accepts the strongest maxima that are at least group_radius (Cartesian) away from
/// every accepted peak; closer maxima are merged into their nearest accepted peak.
DetectionSet extract_peaks(const PseudoSpectrum& spectrum, int P_hat, double group_radius);

/// CSV rows "d_m,theta_rad,value".
std::string spectrum_csv(const PseudoSpectrum& spectrum);

}  // namespace sfcw
