#include "sfcw/conversion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <unsupported/Eigen/FFT>

#include "sfcw/config_file.hpp"
#include "sfcw/container.hpp"
#include "sfcw/errors.hpp"
#include "sfcw/parallel.hpp"

namespace sfcw {

std::vector<cd> downconvert_decimate(std::span<const cd> profile, const RadarConfig& cfg,
                                     const DownconversionParams& params) {
  const int N = cfg.N;
  const int K = cfg.K;
  if (static_cast<int>(profile.size()) != N) {
    throw ArgumentError("downconvert_decimate: profile length " + std::to_string(profile.size()) +
                        " != N = " + std::to_string(N));
  }
  if (!(params.f_s_ft > cfg.B)) throw ArgumentError("downconvert_decimate: f_s_ft must exceed B");
  if (K > N) throw ArgumentError("downconvert_decimate: K exceeds N");
  const double f_c = params.f_c ? *params.f_c : derive_params(cfg).f_c;

  std::vector<cd> base(N);
  for (int n = 0; n < N; ++n) {
    // Reduce the phase argument modulo one cycle before scaling to keep it accurate.
    const double cycles = std::fmod(f_c / params.f_s_ft * n, 1.0);
    base[n] = profile[n] * std::polar(1.0, -2.0 * kPi * cycles);
  }
  Eigen::FFT<double> fft;
  std::vector<cd> spectrum;
  fft.fwd(spectrum, base);

  const int q_lo = -((K - 1) / 2);
  std::vector<cd> out(K);
  const double scale = static_cast<double>(K) / N;
  for (int k = 0; k < K; ++k) {
    const int q = q_lo + k;
    out[k] = spectrum[(q % N + N) % N] * scale;
  }
  return out;
}

std::vector<cd> downconvert_decimate(std::span<const double> profile, const RadarConfig& cfg,
                                     const DownconversionParams& params) {
  std::vector<cd> z(profile.begin(), profile.end());
  return downconvert_decimate(std::span<const cd>(z), cfg, params);
}

RowMajorMatrixXcd assemble_virtual_array(const std::map<PairKey, std::vector<cd>>& per_pair,
                                         const RadarConfig& cfg) {
  const int M = cfg.channels();
  RowMajorMatrixXcd out(cfg.K, M);
  for (int tx = 0; tx < cfg.M_t; ++tx) {
    for (int rx = 0; rx < cfg.M_r; ++rx) {
      const auto it = per_pair.find({tx, rx});
      if (it == per_pair.end()) {
        throw DataError("virtual array: missing signal for pair (tx " + std::to_string(tx) + ", rx " +
                        std::to_string(rx) + ")");
      }
      if (static_cast<int>(it->second.size()) != cfg.K) {
        throw DataError("virtual array: pair signal has length " + std::to_string(it->second.size()) +
                        ", expected K = " + std::to_string(cfg.K));
      }
      const int m = tx * cfg.M_r + rx;
      for (int k = 0; k < cfg.K; ++k) out(k, m) = it->second[k];
    }
  }
  return out;
}

std::span<const double> RawRecording::profile(int l, int pair) const {
  const std::size_t N = static_cast<std::size_t>(config.N);
  const std::size_t offset = (static_cast<std::size_t>(l) * pair_table.size() + pair) * N;
  return std::span<const double>(profiles).subspan(offset, N);
}

void RawRecording::check() const {
  const std::size_t expected = slow_time.size() * pair_table.size() * static_cast<std::size_t>(config.N);
  if (profiles.size() != expected) {
    throw DataError("raw recording: " + std::to_string(profiles.size()) + " profile values, expected " +
                    std::to_string(expected));
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& p : pair_table) {
    if (!seen.insert(p).second) {
      throw DataError("raw recording: duplicate antenna pair " + std::to_string(p.first) + ":" +
                      std::to_string(p.second));
    }
  }
  if (static_cast<int>(tx_ids.size()) != config.M_t || static_cast<int>(rx_ids.size()) != config.M_r) {
    throw DataError("raw recording: tx_ids/rx_ids do not match M_t/M_r");
  }
}

MeasurementCube convert_recording(const RawRecording& raw) {
  raw.check();
  const RadarConfig& cfg = raw.config;
  derive_params(cfg);
  // Column of pair_table for each virtual (tx, rx) slot.
  std::map<PairKey, int> slot_to_pair;
  for (int tx = 0; tx < cfg.M_t; ++tx) {
    for (int rx = 0; rx < cfg.M_r; ++rx) {
      const std::pair<int, int> hw{raw.tx_ids[tx], raw.rx_ids[rx]};
      const auto it = std::find(raw.pair_table.begin(), raw.pair_table.end(), hw);
      if (it == raw.pair_table.end()) {
        throw DataError("raw recording: antenna pair " + std::to_string(hw.first) + ":" +
                        std::to_string(hw.second) + " not recorded");
      }
      slot_to_pair[{tx, rx}] = static_cast<int>(it - raw.pair_table.begin());
    }
  }
  const DownconversionParams params{raw.f_s_ft, raw.f_c};
  const int L = raw.L();
  MeasurementCube cube(cfg, L, cfg.K, cfg.channels());
  cube.slow_time = raw.slow_time;
  cube.ground_truth = raw.ground_truth;
  parallel_for(static_cast<std::size_t>(L), [&](std::size_t l) {
    std::map<PairKey, std::vector<cd>> per_pair;
    for (const auto& [slot, col] : slot_to_pair) {
      per_pair[slot] = downconvert_decimate(raw.profile(static_cast<int>(l), col), cfg, params);
    }
    const RowMajorMatrixXcd S = assemble_virtual_array(per_pair, cfg);
    std::copy(S.data(), S.data() + S.size(), cube.samples.begin() + l * S.size());
  });
  cube.check();
  return cube;
}

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

RawRecording read_raw_impl(const std::filesystem::path& dir) {
  const KeyValues kv = load_key_values(dir / "raw.cfg");
  RawRecording raw;
  raw.config = radar_config_from(kv, walabot_config());
  raw.f_s_ft = kv.get_double("f_s_ft", raw.f_s_ft);
  if (kv.has("f_c")) raw.f_c = kv.get_double("f_c");
  if (kv.has("tx_ids")) raw.tx_ids = kv.get_int_list("tx_ids");
  if (kv.has("rx_ids")) raw.rx_ids = kv.get_int_list("rx_ids");
  for (const auto& item : split_list(kv.get_string("pairs"))) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("raw.cfg: pair '" + item + "' must be tx:rx");
    raw.pair_table.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
  }
  const int L = kv.get_int("L");

  std::ifstream st(dir / "slow_time.txt");
  if (!st) throw DataError("cannot open " + (dir / "slow_time.txt").string());
  double t;
  while (st >> t) raw.slow_time.push_back(t);
  if (static_cast<int>(raw.slow_time.size()) != L) {
    throw DataError("slow_time.txt holds " + std::to_string(raw.slow_time.size()) +
                    " stamps, expected L = " + std::to_string(L));
  }

  std::ifstream pf(dir / "profiles.f64", std::ios::binary);
  if (!pf) throw DataError("cannot open " + (dir / "profiles.f64").string());
  const std::string bytes((std::istreambuf_iterator<char>(pf)), std::istreambuf_iterator<char>());
  const std::size_t expected = static_cast<std::size_t>(L) * raw.pair_table.size() * raw.config.N * 8;
  if (bytes.size() != expected) {
    throw FormatError("profiles.f64 holds " + std::to_string(bytes.size()) + " bytes, expected " +
                          std::to_string(expected),
                      static_cast<long long>(std::min(bytes.size(), expected)));
  }
  raw.profiles.resize(expected / 8);
  for (std::size_t i = 0; i < raw.profiles.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[8 * i + b])) << (8 * b);
    }
    raw.profiles[i] = std::bit_cast<double>(bits);
  }

  if (kv.has("truth.count")) {
    GroundTruth truth;
    const int n = kv.get_int("truth.count");
    for (int i = 0; i < n; ++i) {
      const auto vals = kv.get_double_list("truth." + std::to_string(i));
      if (vals.size() != 3) throw ConfigError("raw.cfg: truth entries must be d,theta_deg,breath_freq");
      truth.persons.push_back({{vals[0], deg2rad(vals[1])}, vals[2]});
    }
    raw.ground_truth = std::move(truth);
  }
  raw.check();
  return raw;
}

}  // namespace

RawRecording read_raw_recording(const std::filesystem::path& dir) {
  // A malformed raw.cfg is bad input data, not a bad run configuration.
  try {
    return read_raw_impl(dir);
  } catch (const ConfigError& e) {
    throw DataError(std::string("raw recording: ") + e.what());
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ArgumentError*>(&e)) throw;
    throw DataError(std::string("raw recording ") + dir.string() + ": malformed value (" + e.what() + ")");
  }
}

void write_raw_recording(const RawRecording& raw, const std::filesystem::path& dir) {
  raw.check();
  std::filesystem::create_directories(dir);
  {
    std::ofstream cfg(dir / "raw.cfg");
    cfg << write_radar_config(raw.config);
    cfg << "f_s_ft = " << format_double(raw.f_s_ft) << '\n';
    if (raw.f_c) cfg << "f_c = " << format_double(*raw.f_c) << '\n';
    cfg << "L = " << raw.L() << '\n';
    cfg << "pairs = ";
    for (std::size_t i = 0; i < raw.pair_table.size(); ++i) {
      cfg << (i ? "," : "") << raw.pair_table[i].first << ':' << raw.pair_table[i].second;
    }
    cfg << '\n';
    cfg << "tx_ids = " << join_ints(raw.tx_ids) << '\n';
    cfg << "rx_ids = " << join_ints(raw.rx_ids) << '\n';
    if (raw.ground_truth) {
      cfg << "truth.count = " << raw.ground_truth->persons.size() << '\n';
      for (std::size_t i = 0; i < raw.ground_truth->persons.size(); ++i) {
        const auto& p = raw.ground_truth->persons[i];
        cfg << "truth." << i << " = " << format_double(p.location.d) << ','
            << format_double(rad2deg(p.location.theta)) << ',' << format_double(p.breath_freq) << '\n';
      }
    }
  }
  {
    std::ofstream st(dir / "slow_time.txt");
    for (double t : raw.slow_time) st << format_double(t) << '\n';
  }
  std::ofstream pf(dir / "profiles.f64", std::ios::binary);
  std::string buf;
  buf.reserve(raw.profiles.size() * 8);
  for (double v : raw.profiles) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) buf.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
  }
  pf.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!pf) throw DataError("cannot write " + (dir / "profiles.f64").string());
}

}  // namespace sfcw
