#include "sfcw/config_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sfcw/container.hpp"
#include "sfcw/errors.hpp"

namespace sfcw {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& what) {
  double v = 0;
  const auto t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(what + ": '" + text + "' is not a number");
  }
  return v;
}

int to_int(const std::string& text, const std::string& what) {
  int v = 0;
  const auto t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(what + ": '" + text + "' is not an integer");
  }
  return v;
}

}  // namespace

KeyValues KeyValues::parse(const std::string& text, const std::string& source) {
  KeyValues kv;
  kv.source_ = source;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    if (kv.values_.count(key)) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    kv.values_[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return KeyValues::parse(ss.str(), path.string());
}

std::string KeyValues::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(source_ + ": missing key '" + key + "'");
  return it->second;
}

std::string KeyValues::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double KeyValues::get_double(const std::string& key) const {
  return to_double(get_string(key), source_ + ": key '" + key + "'");
}

double KeyValues::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int KeyValues::get_int(const std::string& key) const {
  return to_int(get_string(key), source_ + ": key '" + key + "'");
}

int KeyValues::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto v = get_string(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(source_ + ": key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<double> KeyValues::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(get_string(key))) {
    out.push_back(to_double(item, source_ + ": key '" + key + "'"));
  }
  return out;
}

std::vector<int> KeyValues::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (const auto& item : split_list(get_string(key))) {
    out.push_back(to_int(item, source_ + ": key '" + key + "'"));
  }
  return out;
}

std::vector<int> KeyValues::indices(const std::string& prefix) const {
  std::set<int> idx;
  const std::string head = prefix + ".";
  for (const auto& [key, _] : values_) {
    if (key.rfind(head, 0) != 0) continue;
    const auto rest = key.substr(head.size());
    const auto dot = rest.find('.');
    if (dot == std::string::npos) continue;
    idx.insert(to_int(rest.substr(0, dot), source_ + ": key '" + key + "'"));
  }
  return {idx.begin(), idx.end()};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

RadarConfig radar_config_from(const KeyValues& kv, const RadarConfig& base) {
  RadarConfig cfg = base;
  cfg.f0 = kv.get_double("f0", cfg.f0);
  cfg.K = kv.get_int("K", cfg.K);
  cfg.B = kv.get_double("B", cfg.B);
  cfg.N = kv.get_int("N", cfg.N);
  cfg.delta = kv.get_double("delta", cfg.delta);
  cfg.delta_t = kv.get_double("delta_t", cfg.delta_t);
  cfg.M_r = kv.get_int("M_r", cfg.M_r);
  cfg.M_t = kv.get_int("M_t", cfg.M_t);
  cfg.f_st = kv.get_double("f_st", cfg.f_st);
  cfg.c = kv.get_double("c", cfg.c);
  cfg.T = kv.get_double("T", cfg.T);
  cfg.T_K = kv.get_double("T_K", cfg.T_K);
  return cfg;
}

std::string write_radar_config(const RadarConfig& cfg) {
  std::ostringstream os;
  os << "f0 = " << format_double(cfg.f0) << '\n'
     << "K = " << cfg.K << '\n'
     << "B = " << format_double(cfg.B) << '\n'
     << "N = " << cfg.N << '\n'
     << "delta = " << format_double(cfg.delta) << '\n'
     << "delta_t = " << format_double(cfg.delta_t) << '\n'
     << "M_r = " << cfg.M_r << '\n'
     << "M_t = " << cfg.M_t << '\n'
     << "f_st = " << format_double(cfg.f_st) << '\n'
     << "c = " << format_double(cfg.c) << '\n'
     << "T = " << format_double(cfg.T) << '\n'
     << "T_K = " << format_double(cfg.T_K) << '\n';
  return os.str();
}

PipelineConfig pipeline_config_from(const KeyValues& kv, const PipelineConfig& base) {
  static const std::set<std::string> known = {
      "w_st", "l_st", "w_k_music", "w_m_music", "w_k_moe", "w_m_moe", "n_cov", "p_sub", "grid.d_hi",
      "grid.d_step", "grid.theta_max_deg", "grid.theta_step_deg", "alpha", "n_candidates", "index_cap",
      "max_order", "group_radius", "track_radius", "d_match", "window", "window.range", "window.angle",
      "band.lo", "band.hi", "zero_pad", "steering_reference", "accumulate"};
  for (const auto& [key, value] : kv.values()) {
    if (!known.count(key)) throw ConfigError("pipeline config: unknown key '" + key + "'");
  }
  PipelineConfig p = base;
  p.W_st = kv.get_int("w_st", p.W_st);
  p.L_st = kv.get_int("l_st", p.L_st);
  p.music.W_K = kv.get_int("w_k_music", p.music.W_K);
  p.music.W_M = kv.get_int("w_m_music", p.music.W_M);
  p.moe.W_K = kv.get_int("w_k_moe", p.moe.W_K);
  p.moe.W_M = kv.get_int("w_m_moe", p.moe.W_M);
  p.n_cov = kv.get_int("n_cov", p.n_cov);
  p.P_sub = kv.get_int("p_sub", p.P_sub);
  p.grid.d_hi = kv.get_double("grid.d_hi", p.grid.d_hi);
  p.grid.d_step = kv.get_double("grid.d_step", p.grid.d_step);
  p.grid.theta_max = deg2rad(kv.get_double("grid.theta_max_deg", rad2deg(p.grid.theta_max)));
  p.grid.theta_step = deg2rad(kv.get_double("grid.theta_step_deg", rad2deg(p.grid.theta_step)));
  p.order.alpha = kv.get_double("alpha", p.order.alpha);
  p.order.n_candidates = kv.get_int("n_candidates", p.order.n_candidates);
  p.order.D = kv.get_int("index_cap", p.order.D);
  p.order.max_order = kv.get_int("max_order", p.order.max_order);
  p.group_radius = kv.get_double("group_radius", p.group_radius);
  p.track_radius = kv.get_double("track_radius", p.track_radius);
  p.d_match = kv.get_double("d_match", p.d_match);
  if (kv.has("window")) p.range_window = p.angle_window = parse_window_kind(kv.get_string("window"));
  if (kv.has("window.range")) p.range_window = parse_window_kind(kv.get_string("window.range"));
  if (kv.has("window.angle")) p.angle_window = parse_window_kind(kv.get_string("window.angle"));
  p.band.lo = kv.get_double("band.lo", p.band.lo);
  p.band.hi = kv.get_double("band.hi", p.band.hi);
  p.zero_pad = kv.get_int("zero_pad", p.zero_pad);
  if (kv.has("steering_reference")) p.steering = parse_steering_reference(kv.get_string("steering_reference"));
  p.accumulate = kv.get_bool("accumulate", p.accumulate);
  return p;
}

Scenario scenario_from(const KeyValues& kv) {
  Scenario sc;
  sc.radar = radar_config_from(kv, walabot_config());
  Scene& s = sc.scene;
  s.L = kv.get_int("L", s.L);
  s.f_st = kv.get_double("f_st", s.f_st);
  s.jitter = kv.get_double("jitter", s.jitter);
  s.clutter.seed = static_cast<std::uint64_t>(kv.get_int("seed", 1));
  if (kv.has("noise_std") && kv.has("snr_db")) throw ConfigError("scenario: give noise_std or snr_db, not both");
  s.clutter.noise_std = kv.get_double("noise_std", 0.0);
  if (kv.has("snr_db")) s.clutter.noise_std = std::pow(10.0, -kv.get_double("snr_db") / 20.0);

  for (int i : kv.indices("person")) {
    const std::string p = "person." + std::to_string(i) + ".";
    PersonModel pm;
    pm.location.d = kv.get_double(p + "d");
    pm.location.theta = deg2rad(kv.get_double(p + "theta_deg", 0.0));
    pm.amplitude = std::polar(kv.get_double(p + "amp", 1.0), deg2rad(kv.get_double(p + "amp_phase_deg", 0.0)));
    pm.breath_freq = kv.get_double(p + "breath_freq", pm.breath_freq);
    pm.breath_amp = kv.get_double(p + "breath_amp", pm.breath_amp);
    pm.breath_phase = kv.get_double(p + "breath_phase", pm.breath_phase);
    pm.heart_freq = kv.get_double(p + "heart_freq", pm.heart_freq);
    pm.heart_amp = kv.get_double(p + "heart_amp", pm.heart_amp);
    pm.heart_phase = kv.get_double(p + "heart_phase", pm.heart_phase);
    s.persons.push_back(pm);
  }
  for (int i : kv.indices("reflector")) {
    const std::string p = "reflector." + std::to_string(i) + ".";
    StaticReflector r;
    r.location.d = kv.get_double(p + "d");
    r.location.theta = deg2rad(kv.get_double(p + "theta_deg", 0.0));
    r.gain = std::polar(kv.get_double(p + "gain", 1.0), deg2rad(kv.get_double(p + "gain_phase_deg", 0.0)));
    s.clutter.static_reflectors.push_back(r);
  }
  sc.radar.f_st = s.f_st;
  return sc;
}

}  // namespace sfcw
