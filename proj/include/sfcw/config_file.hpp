#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sfcw/pipeline.hpp"
#include "sfcw/radar_config.hpp"
#include "sfcw/simulator.hpp"

namespace sfcw {

/// Parsed "key = value" file. '#' starts a comment; blank lines are ignored.
class KeyValues {
 public:
  static KeyValues parse(const std::string& text, const std::string& source = "<string>");

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;
  /// Distinct integer indices i for keys of the form "<prefix>.<i>.<field>".
  std::vector<int> indices(const std::string& prefix) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::string source_;
};

KeyValues load_key_values(const std::filesystem::path& path);

/// Splits a comma-separated list, trimming blanks.
std::vector<std::string> split_list(const std::string& text);

/// Radar keys: f0, K, B, N, delta, delta_t, M_r, M_t, f_st, c, T, T_K.
RadarConfig radar_config_from(const KeyValues& kv, const RadarConfig& base);
std::string write_radar_config(const RadarConfig& cfg);

/// Pipeline keys: w_st, l_st, w_k_music, w_m_music, w_k_moe, w_m_moe, n_cov, p_sub,
/// grid.d_hi, grid.d_step, grid.theta_max_deg, grid.theta_step_deg, alpha, n_candidates,
/// index_cap, max_order, group_radius, track_radius, d_match, window.range, window.angle,
/// band.lo, band.hi, zero_pad, accumulate.
PipelineConfig pipeline_config_from(const KeyValues& kv, const PipelineConfig& base);

/// Scenario keys: L, f_st, noise_std or snr_db, seed, jitter,
/// person.<i>.{d, theta_deg, amp, amp_phase_deg, breath_freq, breath_amp, breath_phase,
/// heart_freq, heart_amp, heart_phase}, reflector.<i>.{d, theta_deg, gain, gain_phase_deg}.
/// Radar keys in the same file override the Walabot defaults.
struct Scenario {
  RadarConfig radar;
  Scene scene;
};
Scenario scenario_from(const KeyValues& kv);

}  // namespace sfcw
