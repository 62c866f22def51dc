#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sfcw/measurement.hpp"
#include "sfcw/radar_config.hpp"

namespace sfcw {

struct DownconversionParams {
  double f_s_ft = 102.4e9;       // fast-time sampling rate
  std::optional<double> f_c;     // carrier; defaults to the derived center frequency
};

/// Mixes the profile to baseband with exp(-j 2 pi f_c n / f_s_ft), takes an N-point DFT and
/// keeps the K bins centred on DC (for even K the extra bin is on the positive side),
/// ordered from the most negative frequency up. Bins are scaled by K/N, so an analytic
/// profile built with complex_range_profile() on a carrier-aligned grid maps back to the
/// stepped-frequency samples with unit gain; a real profile carries half of it.
std::vector<cd> downconvert_decimate(std::span<const cd> profile, const RadarConfig& cfg,
                                     const DownconversionParams& params = {});
std::vector<cd> downconvert_decimate(std::span<const double> profile, const RadarConfig& cfg,
                                     const DownconversionParams& params = {});

/// (tx index, rx index) within the virtual-array layout, both 0-based.
using PairKey = std::pair<int, int>;

/// Orders per-pair signals into a K x M matrix with channel m = tx * M_r + rx.
/// Throws DataError when a pair is missing or a signal has the wrong length.
RowMajorMatrixXcd assemble_virtual_array(const std::map<PairKey, std::vector<cd>>& per_pair,
                                         const RadarConfig& cfg);

/// Range profiles of one recording as delivered by the radar API.
struct RawRecording {
  RadarConfig config;
  std::vector<std::pair<int, int>> pair_table;  // hardware (tx, rx) antenna ids
  std::vector<double> profiles;                  // [l][pair][n], length N each
  std::vector<double> slow_time;
  double f_s_ft = 102.4e9;
  std::optional<double> f_c;
  std::vector<int> tx_ids{1, 17};        // transmitters forming the virtual array, in order
  std::vector<int> rx_ids{2, 6, 10, 14}; // receivers, in order
  std::optional<GroundTruth> ground_truth;

  int L() const { return static_cast<int>(slow_time.size()); }
  std::span<const double> profile(int l, int pair) const;
  /// Throws DataError if sizes disagree or pair_table has duplicates.
  void check() const;
};

/// Downconverts every selected antenna pair and slow-time sample and assembles the cube.
MeasurementCube convert_recording(const RawRecording& raw);

/// Raw recording directory: raw.cfg (key = value: radar config keys, f_s_ft, optional f_c,
/// L, pairs = tx:rx,..., tx_ids, rx_ids, optional truth.<i> = d,theta_deg,breath_freq),
/// slow_time.txt (one stamp per line) and profiles.f64 (little-endian float64 [l][pair][n]).
RawRecording read_raw_recording(const std::filesystem::path& dir);
void write_raw_recording(const RawRecording& raw, const std::filesystem::path& dir);

}  // namespace sfcw
