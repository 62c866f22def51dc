#include "sfcw/pipeline.hpp"

#include <sstream>

#include "sfcw/errors.hpp"
#include "sfcw/preprocess.hpp"

namespace sfcw {

void PipelineConfig::validate(const RadarConfig& cfg) const {
  const int M = cfg.channels();
  auto fail = [](const std::string& msg) { throw ConfigError("pipeline config: " + msg); };
  if (W_st < 1) fail("w_st must be >= 1");
  if (L_st < 2) fail("l_st must be >= 2");
  if (n_cov < 1 || n_cov > L_st) fail("n_cov must be in [1, l_st]");
  try {
    music.check(cfg.K, M);
    moe.check(cfg.K, M);
    grid.check();
  } catch (const ArgumentError& e) {
    fail(e.what());
  }
  if (P_sub < 0 || P_sub >= music.dimension()) fail("p_sub must be below w_k_music * w_m_music");
  if (order.alpha < 1) fail("alpha must be >= 1");
  if (order.n_candidates < 1) fail("n_candidates must be >= 1");
  if (order.D > moe.dimension()) fail("model order index cap exceeds the MOE matrix size");
  if (!(group_radius >= 0) || !(track_radius >= 0) || !(d_match >= 0)) fail("radii must be >= 0");
  if (!(band.hi > band.lo) || band.lo < 0) fail("breathing band must satisfy 0 <= lo < hi");
  if (zero_pad < 1) fail("zero_pad must be >= 1");
}

PipelineResult run_pipeline(const MeasurementCube& cube, const PipelineConfig& config) {
  cube.check();
  const RadarConfig& cfg = cube.config;
  config.validate(cfg);
  const DerivedParams dp = derive_params(cfg);

  ModelOrderConfig order_cfg = config.order;
  if (order_cfg.D <= 0) order_cfg.D = index_cap(config.moe, cfg.K, dp.M);

  PipelineResult result;
  result.f_c = dp.f_c;
  result.spectrum = PseudoSpectrum::zeros(config.grid);

  // 1. clutter removal on the whole recording
  const MeasurementCube filtered = sma_filter(cube, config.W_st);
  const SegmentedCube segs = segment(filtered, config.L_st, config.W_st);

  for (std::size_t s = 0; s < segs.segments.size(); ++s) {
    const CubeView& seg = segs.segments[s];
    SegmentResult sr;
    sr.index = static_cast<int>(s);
    sr.t_start = seg.slow_time().front();
    try {
      // 2. MUSIC spectrum, accumulated over segments
      const auto cov_music = smoothed_covariance(seg, config.music, config.n_cov);
      const auto spec = music_spectrum(cov_music, config.P_sub, config.music.W_K, config.music.W_M,
                                       config.grid, cfg, config.steering);
      result.spectrum = config.accumulate ? accumulate_spectrum(result.spectrum, spec) : spec;

      // 3-4. model order from the MOE-smoothed covariance
      const auto cov_moe = smoothed_covariance(seg, config.moe, config.n_cov);
      sr.moe_eigvals = cov_moe.eigvals;
      sr.order = estimate_order_detail(cov_moe.eigvals, order_cfg);

      // 5. locations
      sr.detections = extract_peaks(result.spectrum, sr.order.P_hat, config.group_radius);
      sr.detections.segment_index = sr.index;
      if (sr.detections.short_of_target) {
        warn("segment " + std::to_string(s) + ": found fewer peaks than the estimated order");
      }

      // 6. vital signs at each location
      std::vector<VitalSeries> series;
      for (const auto& det : sr.detections.detections) {
        const auto filter = build_filter(det.location, cfg, config.range_window, config.angle_window);
        series.push_back(extract_displacement(filter, seg, dp.f_c, cfg.c));
      }

      // 7. tracking
      sr.labels = update_tracks(result.tracks, sr.detections, config.track_radius, &series);
    } catch (const std::exception& e) {
      const std::string ctx = "segment " + std::to_string(s) + ": " + e.what();
      if (dynamic_cast<const NumericError*>(&e)) throw NumericError(ctx);
      if (dynamic_cast<const DataError*>(&e)) throw DataError(ctx);
      if (dynamic_cast<const ArgumentError*>(&e)) throw ArgumentError(ctx);
      throw;
    }
    result.segments.push_back(std::move(sr));
  }

  // 8. breathing rate per track
  for (auto& track : result.tracks) {
    if (track.series.empty()) continue;
    track.breath_freq = breathing_frequency(track.series, config.band, config.zero_pad);
  }
  return result;
}

std::vector<PolarLocation> final_locations(const PipelineResult& result) {
  std::vector<PolarLocation> out;
  if (result.segments.empty()) return out;
  for (const auto& d : result.segments.back().detections.detections) out.push_back(d.location);
  return out;
}

namespace {

const Track* find_track(const PipelineResult& result, int label) {
  for (const auto& t : result.tracks) {
    if (t.label == label) return &t;
  }
  return nullptr;
}

}  // namespace

std::string detections_csv(const PipelineResult& result) {
  std::ostringstream os;
  os.precision(12);
  os << "segment,label,d_m,theta_rad,x_m,y_m,value,breath_hz\n";
  for (const auto& sr : result.segments) {
    for (std::size_t i = 0; i < sr.detections.detections.size(); ++i) {
      const auto& det = sr.detections.detections[i];
      const auto xy = polar_to_cartesian(det.location);
      const int label = sr.labels.at(i);
      os << sr.index << ',' << label << ',' << det.location.d << ',' << det.location.theta << ','
         << xy.x << ',' << xy.y << ',' << det.value << ',';
      const Track* t = find_track(result, label);
      if (t && t->breath_freq) os << *t->breath_freq;
      os << '\n';
    }
  }
  return os.str();
}

std::string vitals_csv(const PipelineResult& result) {
  std::ostringstream os;
  os.precision(12);
  os << "label,segment,t_s,eta_m\n";
  for (const auto& t : result.tracks) {
    for (std::size_t s = 0; s < t.series.size(); ++s) {
      const auto& vs = t.series[s];
      for (std::size_t l = 0; l < vs.eta.size(); ++l) {
        os << t.label << ',' << t.segments[s] << ',' << vs.time[l] << ',' << vs.eta[l] << '\n';
      }
    }
  }
  return os.str();
}

std::string tracks_csv(const PipelineResult& result) {
  std::ostringstream os;
  os.precision(12);
  os << "label,n_segments,d_m,theta_rad,breath_hz\n";
  for (const auto& t : result.tracks) {
    os << t.label << ',' << t.segments.size() << ',' << t.last_location().d << ','
       << t.last_location().theta << ',';
    if (t.breath_freq) os << *t.breath_freq;
    os << '\n';
  }
  return os.str();
}

std::string breathing_spectrum_csv(const PipelineResult& result, const PipelineConfig& config) {
  std::ostringstream os;
  os.precision(12);
  os << "label,f_hz,power\n";
  for (const auto& t : result.tracks) {
    if (t.series.empty()) continue;
    const auto spec = averaged_periodogram(t.series, config.band, config.zero_pad);
    for (std::size_t i = 0; i < spec.freq.size(); ++i) {
      os << t.label << ',' << spec.freq[i] << ',' << spec.power[i] << '\n';
    }
  }
  return os.str();
}

}  // namespace sfcw
