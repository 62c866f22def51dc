#include "sfcw/container.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "sfcw/errors.hpp"

namespace sfcw {
namespace {

constexpr const char* kMagic = "RVC1";

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

void put_f64(std::string& buf, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

double get_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

double parse_double(const std::string& s, long long offset, const std::string& key) {
  double v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && *first == ' ') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw FormatError("header key '" + key + "': cannot parse number '" + s + "'", offset);
  }
  return v;
}

long long parse_int(const std::string& s, long long offset, const std::string& key) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("header key '" + key + "': cannot parse integer '" + s + "'", offset);
  }
  return v;
}

std::vector<double> parse_list(const std::string& s, long long offset, const std::string& key) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(parse_double(s.substr(start, comma - start), offset, key));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_container(const MeasurementCube& cube, std::ostream& out) {
  cube.check();
  const RadarConfig& c = cube.config;
  std::ostringstream h;
  h << kMagic << '\n';
  h << "version = 1\n";
  h << "f0 = " << format_double(c.f0) << '\n';
  h << "K_config = " << c.K << '\n';
  h << "B = " << format_double(c.B) << '\n';
  h << "N = " << c.N << '\n';
  h << "delta = " << format_double(c.delta) << '\n';
  h << "delta_t = " << format_double(c.delta_t) << '\n';
  h << "M_r = " << c.M_r << '\n';
  h << "M_t = " << c.M_t << '\n';
  h << "f_st = " << format_double(c.f_st) << '\n';
  h << "c = " << format_double(c.c) << '\n';
  h << "T = " << format_double(c.T) << '\n';
  h << "T_K = " << format_double(c.T_K) << '\n';
  h << "L = " << cube.L << '\n';
  h << "K = " << cube.K << '\n';
  h << "M = " << cube.M << '\n';
  h << "slow_time = ";
  for (int l = 0; l < cube.L; ++l) h << (l ? "," : "") << format_double(cube.slow_time[l]);
  h << '\n';
  if (cube.ground_truth) {
    const auto& persons = cube.ground_truth->persons;
    h << "truth.count = " << persons.size() << '\n';
    for (std::size_t i = 0; i < persons.size(); ++i) {
      h << "truth." << i << " = " << format_double(persons[i].location.d) << ','
        << format_double(persons[i].location.theta) << ',' << format_double(persons[i].breath_freq)
        << '\n';
    }
  }
  h << "payload_bytes = " << cube.samples.size() * 16 << '\n';
  h << "END\n";
  const std::string header = h.str();
  out.write(header.data(), static_cast<std::streamsize>(header.size()));

  std::string payload;
  payload.reserve(cube.samples.size() * 16);
  for (const auto& z : cube.samples) {
    put_f64(payload, z.real());
    put_f64(payload, z.imag());
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw DataError("write_container: stream write failed");
}

void write_container(const MeasurementCube& cube, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open " + path.string() + " for writing");
  write_container(cube, f);
}

MeasurementCube read_container(std::istream& in) {
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  auto next_line = [&](std::string& line) -> long long {
    const long long start = static_cast<long long>(pos);
    const std::size_t nl = data.find('\n', pos);
    if (nl == std::string::npos) throw FormatError("unterminated header (missing END line)", start);
    line = data.substr(pos, nl - pos);
    pos = nl + 1;
    return start;
  };

  std::string line;
  next_line(line);
  if (line != kMagic) throw FormatError("bad magic: expected RVC1", 0);

  std::map<std::string, std::pair<std::string, long long>> kv;
  while (true) {
    const long long off = next_line(line);
    if (line == "END") break;
    const std::size_t eq = line.find(" = ");
    if (eq == std::string::npos) throw FormatError("malformed header line '" + line + "'", off);
    const std::string key = line.substr(0, eq);
    if (kv.count(key)) throw FormatError("duplicate header key '" + key + "'", off);
    kv[key] = {line.substr(eq + 3), off};
  }
  const long long payload_offset = static_cast<long long>(pos);

  auto require = [&](const std::string& key) -> const std::pair<std::string, long long>& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw FormatError("missing header key '" + key + "'", payload_offset);
    return it->second;
  };
  auto num = [&](const std::string& key) {
    const auto& [v, off] = require(key);
    return parse_double(v, off, key);
  };
  auto integer = [&](const std::string& key) {
    const auto& [v, off] = require(key);
    return parse_int(v, off, key);
  };

  if (integer("version") != 1) throw FormatError("unsupported container version", require("version").second);

  RadarConfig cfg;
  cfg.f0 = num("f0");
  cfg.K = static_cast<int>(integer("K_config"));
  cfg.B = num("B");
  cfg.N = static_cast<int>(integer("N"));
  cfg.delta = num("delta");
  cfg.delta_t = num("delta_t");
  cfg.M_r = static_cast<int>(integer("M_r"));
  cfg.M_t = static_cast<int>(integer("M_t"));
  cfg.f_st = num("f_st");
  cfg.c = num("c");
  cfg.T = num("T");
  cfg.T_K = num("T_K");

  const long long L = integer("L");
  const long long K = integer("K");
  const long long M = integer("M");
  if (L < 0 || K < 1 || M < 1 || K != cfg.K || M != static_cast<long long>(cfg.M_r) * cfg.M_t) {
    throw FormatError("inconsistent dimensions L=" + std::to_string(L) + " K=" + std::to_string(K) +
                          " M=" + std::to_string(M),
                      require("L").second);
  }
  const auto& [st_text, st_off] = require("slow_time");
  std::vector<double> slow_time = parse_list(st_text, st_off, "slow_time");
  if (static_cast<long long>(slow_time.size()) != L) {
    throw FormatError("slow_time has " + std::to_string(slow_time.size()) + " entries, expected L = " +
                          std::to_string(L),
                      st_off);
  }

  const unsigned long long expected = static_cast<unsigned long long>(L) * K * M * 16;
  if (static_cast<unsigned long long>(integer("payload_bytes")) != expected) {
    throw FormatError("payload_bytes does not equal L*K*M*16 = " + std::to_string(expected),
                      require("payload_bytes").second);
  }
  const unsigned long long actual = data.size() - pos;
  if (actual != expected) {
    throw FormatError("payload length " + std::to_string(actual) + " bytes, expected " +
                          std::to_string(expected),
                      payload_offset + static_cast<long long>(std::min(actual, expected)));
  }

  MeasurementCube cube(cfg, static_cast<int>(L), static_cast<int>(K), static_cast<int>(M));
  cube.slow_time = std::move(slow_time);
  const auto* p = reinterpret_cast<const unsigned char*>(data.data() + pos);
  for (std::size_t i = 0; i < cube.samples.size(); ++i) {
    cube.samples[i] = cd{get_f64(p + 16 * i), get_f64(p + 16 * i + 8)};
  }

  if (kv.count("truth.count")) {
    GroundTruth truth;
    const long long n = integer("truth.count");
    for (long long i = 0; i < n; ++i) {
      const std::string key = "truth." + std::to_string(i);
      const auto& [v, off] = require(key);
      const auto vals = parse_list(v, off, key);
      if (vals.size() != 3) throw FormatError("'" + key + "' must hold d,theta,breath_freq", off);
      truth.persons.push_back({{vals[0], vals[1]}, vals[2]});
    }
    cube.ground_truth = std::move(truth);
  }
  try {
    cube.check();
  } catch (const DataError& e) {
    throw FormatError(e.what(), st_off);
  }
  return cube;
}

MeasurementCube read_container(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open " + path.string());
  return read_container(f);
}

}  // namespace sfcw
