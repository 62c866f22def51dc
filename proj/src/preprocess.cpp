#include "sfcw/preprocess.hpp"

#include <sstream>

#include "sfcw/errors.hpp"
#include "sfcw/parallel.hpp"

namespace sfcw {

MeasurementCube sma_filter(const MeasurementCube& cube, int W_st) {
  if (W_st < 1) throw ArgumentError("sma_filter: W_st must be >= 1");
  if (W_st > cube.L) {
    throw ArgumentError("sma_filter: W_st = " + std::to_string(W_st) + " exceeds L = " +
                        std::to_string(cube.L));
  }
  const int L_out = cube.L - W_st + 1;
  const std::size_t row = static_cast<std::size_t>(cube.K) * cube.M;
  MeasurementCube out(cube.config, L_out, cube.K, cube.M);
  out.ground_truth = cube.ground_truth;
  for (int l = 0; l < L_out; ++l) out.slow_time[l] = cube.slow_time[l + W_st - 1];

  const double inv_w = 1.0 / W_st;
  parallel_for(static_cast<std::size_t>(L_out), [&](std::size_t lo) {
    cd* dst = out.samples.data() + lo * row;
    for (std::size_t i = 0; i < row; ++i) dst[i] = cd{0, 0};
    // Fixed summation order: oldest to newest sample in the window.
    for (int w = 0; w < W_st; ++w) {
      const cd* src = cube.samples.data() + (lo + w) * row;
      for (std::size_t i = 0; i < row; ++i) dst[i] += src[i];
    }
    const cd* cur = cube.samples.data() + (lo + W_st - 1) * row;
    for (std::size_t i = 0; i < row; ++i) dst[i] = cur[i] - dst[i] * inv_w;
  });
  return out;
}

SegmentedCube segment(const MeasurementCube& cube, int L_st, int W_st) {
  if (L_st < 2) throw ArgumentError("segment: L_st must be >= 2");
  SegmentedCube out;
  out.L_st = L_st;
  out.W_st = W_st;
  const int count = cube.L / L_st;
  if (count == 0) {
    std::ostringstream w;
    w << "segment: L = " << cube.L << " is shorter than L_st = " << L_st << "; no segments";
    warn(w.str());
  }
  const CubeView all = cube.view();
  for (int s = 0; s < count; ++s) out.segments.push_back(all.slice(s * L_st, L_st));
  return out;
}

}  // namespace sfcw
