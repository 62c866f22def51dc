#pragma once

#include <vector>

#include "sfcw/measurement.hpp"

namespace sfcw {

/// Trailing moving-average clutter removal along slow time:
/// s_l = s~_l - mean(s~_{l-W+1..l}) for l = W-1..L-1 (0-based). Output has L - W + 1 samples
/// stamped with the slow time of the window's last sample.
MeasurementCube sma_filter(const MeasurementCube& cube, int W_st);

/// Consecutive non-overlapping segments of length L_st over a (filtered) cube.
struct SegmentedCube {
  std::vector<CubeView> segments;
  int W_st = 0;
  int L_st = 0;
};

/// floor(L / L_st) views; the trailing remainder is dropped. Warns when no segment fits.
SegmentedCube segment(const MeasurementCube& cube, int L_st, int W_st = 0);

}  // namespace sfcw
