#pragma once

#include <string>
#include <vector>

#include "sfcw/localizer.hpp"
#include "sfcw/measurement.hpp"
#include "sfcw/model_order.hpp"
#include "sfcw/tracking.hpp"
#include "sfcw/vitals.hpp"

namespace sfcw {

struct PipelineConfig {
  int W_st = 64;
  int L_st = 200;
  SmoothingSpec music{38, 2};  // 700 slices at K = 137, M = 8
  SteeringReference steering = SteeringReference::Centered;
  SmoothingSpec moe{38, 3};    // 600 slices
  int n_cov = 10;
  int P_sub = 15;
  GridSpec grid;
  ModelOrderConfig order;  // D == 0 means index_cap(moe)
  double group_radius = 0.3;
  double track_radius = 0.25;
  double d_match = 0.3;
  WindowKind range_window = WindowKind::Hann;
  WindowKind angle_window = WindowKind::Hann;
  BreathingBand band;
  int zero_pad = 8;
  bool accumulate = true;

  /// Throws ConfigError when a value cannot satisfy the module preconditions for cfg.
  void validate(const RadarConfig& cfg) const;
};

struct SegmentResult {
  int index = 0;
  double t_start = 0;
  OrderEstimate order;
  Eigen::VectorXd moe_eigvals;
  DetectionSet detections;
  std::vector<int> labels;
};

struct PipelineResult {
  std::vector<SegmentResult> segments;
  std::vector<Track> tracks;
  PseudoSpectrum spectrum;  // accumulated over all segments (or last segment only)
  double f_c = 0;
};

/// Clutter removal, per-segment MUSIC (accumulated), MOE order estimate, peak extraction,
/// spatial filtering, tracking and per-track breathing estimation, in that order.
PipelineResult run_pipeline(const MeasurementCube& cube, const PipelineConfig& config);

/// Detections of the last segment, i.e. of the fully accumulated spectrum.
std::vector<PolarLocation> final_locations(const PipelineResult& result);

/// segment,label,d_m,theta_rad,x_m,y_m,value,breath_hz
std::string detections_csv(const PipelineResult& result);
/// label,segment,t_s,eta_m
std::string vitals_csv(const PipelineResult& result);
/// label,n_segments,d_m,theta_rad,breath_hz
std::string tracks_csv(const PipelineResult& result);
/// label,f_hz,power for each track's averaged breathing periodogram.
std::string breathing_spectrum_csv(const PipelineResult& result, const PipelineConfig& config);

}  // namespace sfcw
