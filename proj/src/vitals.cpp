#include "sfcw/vitals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sfcw/errors.hpp"
#include "sfcw/localizer.hpp"

namespace sfcw {

WindowKind parse_window_kind(const std::string& name) {
  if (name == "hann") return WindowKind::Hann;
  if (name == "rect" || name == "rectangular") return WindowKind::Rectangular;
  throw ConfigError("unknown window kind '" + name + "' (expected hann or rect)");
}

std::vector<double> make_window(WindowKind kind, int len) {
  std::vector<double> w(std::max(len, 0), 1.0);
  if (kind == WindowKind::Hann) {
    for (int n = 0; n < len; ++n) w[n] = 0.5 * (1.0 - std::cos(2.0 * kPi * (n + 1) / (len + 1)));
  }
  return w;
}

SpatialFilter build_filter(const PolarLocation& target, const RadarConfig& cfg,
                           WindowKind range_window, WindowKind angle_window) {
  const DerivedParams dp = derive_params(cfg);
  SpatialFilter f;
  f.target = target;
  f.range_window = range_window;
  f.angle_window = angle_window;
  f.H = steering_matrix(target.d, target.theta, dp.K0, dp.M, cfg);
  const auto wk = make_window(range_window, dp.K0);
  const auto wm = make_window(angle_window, dp.M);
  for (int m = 0; m < dp.M; ++m) {
    for (int k = 0; k < dp.K0; ++k) f.H(k, m) *= wk[k] * wm[m];
  }
  return f;
}

std::vector<double> unwrap_phase(std::span<const double> phase) {
  std::vector<double> out(phase.begin(), phase.end());
  double offset = 0.0;
  for (std::size_t i = 1; i < phase.size(); ++i) {
    const double step = phase[i] - phase[i - 1];
    // Smallest whole number of turns bringing the step into (-pi, pi].
    offset -= 2.0 * kPi * std::ceil((step - kPi) / (2.0 * kPi));
    out[i] = phase[i] + offset;
  }
  return out;
}

VitalSeries extract_displacement(const SpatialFilter& filter, const CubeView& segment, double f_c,
                                 double c) {
  const int K0 = static_cast<int>(filter.H.rows());
  const int M = static_cast<int>(filter.H.cols());
  if (segment.K() < K0 || segment.M() != M) {
    throw ArgumentError("extract_displacement: filter does not fit the segment dimensions");
  }
  const int L = segment.L();
  std::vector<cd> y(L);
  double peak = 0.0;
  for (int l = 0; l < L; ++l) {
    const auto S = segment.snapshot(l);
    cd acc{0, 0};
    for (int m = 0; m < M; ++m) {
      for (int k = 0; k < K0; ++k) acc += std::conj(filter.H(k, m)) * S(k, m);
    }
    y[l] = acc;
    peak = std::max(peak, std::abs(acc));
  }

  VitalSeries out;
  out.time.assign(segment.slow_time().begin(), segment.slow_time().end());
  out.unreliable.assign(L, false);
  out.f_st_actual = segment.sampling_rate();
  const double floor_value = std::max(peak * 1e-12, std::numeric_limits<double>::min());
  std::vector<double> phase(L, 0.0);
  double last = 0.0;
  for (int l = 0; l < L; ++l) {
    if (std::abs(y[l]) <= floor_value) {
      out.unreliable[l] = true;
      phase[l] = last;
    } else {
      phase[l] = std::arg(y[l]);
      last = phase[l];
    }
  }
  const auto unwrapped = unwrap_phase(phase);
  out.eta.resize(L);
  const double scale = -c / (4.0 * kPi * f_c);
  for (int l = 0; l < L; ++l) out.eta[l] = scale * unwrapped[l];
  return out;
}

BreathingSpectrum averaged_periodogram(std::span<const VitalSeries> series, BreathingBand band,
                                       int zero_pad) {
  if (series.empty()) throw ArgumentError("breathing_frequency: no series given");
  if (zero_pad < 1) throw ArgumentError("breathing_frequency: zero_pad must be >= 1");
  const VitalSeries& ref = series.front();
  const double fs = ref.f_st_actual > 0 ? ref.f_st_actual : 0.0;
  if (ref.eta.size() < 2 || fs <= 0) {
    throw ArgumentError("breathing_frequency: series needs >= 2 samples with valid stamps");
  }
  const double bin = fs / (static_cast<double>(zero_pad) * ref.eta.size());
  const int first = static_cast<int>(std::ceil(band.lo / bin - 1e-9));
  const int last = static_cast<int>(std::floor(band.hi / bin + 1e-9));
  if (!(band.hi > band.lo) || band.lo < 0 || last < first) {
    throw ArgumentError("breathing_frequency: empty search band");
  }

  BreathingSpectrum spec;
  for (int i = first; i <= last; ++i) spec.freq.push_back(i * bin);
  spec.power.assign(spec.freq.size(), 0.0);
  for (const auto& s : series) {
    const std::size_t n = s.eta.size();
    if (n == 0 || s.time.size() != n) throw ArgumentError("breathing_frequency: malformed series");
    double mean = 0.0;
    for (double v : s.eta) mean += v;
    mean /= static_cast<double>(n);
    const double t0 = s.time.front();
    for (std::size_t b = 0; b < spec.freq.size(); ++b) {
      cd acc{0, 0};
      for (std::size_t l = 0; l < n; ++l) {
        acc += (s.eta[l] - mean) * std::polar(1.0, -2.0 * kPi * spec.freq[b] * (s.time[l] - t0));
      }
      spec.power[b] += std::norm(acc) / static_cast<double>(n);
    }
  }
  for (auto& p : spec.power) p /= static_cast<double>(series.size());
  return spec;
}

double breathing_frequency(std::span<const VitalSeries> series, BreathingBand band, int zero_pad) {
  const auto spec = averaged_periodogram(series, band, zero_pad);
  const auto it = std::max_element(spec.power.begin(), spec.power.end());
  return spec.freq[it - spec.power.begin()];
}

}  // namespace sfcw
