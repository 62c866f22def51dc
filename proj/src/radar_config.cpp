#include "sfcw/radar_config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sfcw/errors.hpp"

namespace sfcw {

RadarConfig walabot_config() { return RadarConfig{}; }

void validate(const RadarConfig& cfg) {
  std::ostringstream err;
  if (cfg.K < 2) err << "K must be >= 2 (got " << cfg.K << "); ";
  if (!(cfg.B > 0)) err << "B must be positive; ";
  if (!(cfg.f0 > 0)) err << "f0 must be positive; ";
  if (cfg.N < cfg.K) err << "N must be >= K; ";
  if (!(cfg.delta > 0)) err << "delta must be positive; ";
  if (cfg.M_r < 1) err << "M_r must be >= 1; ";
  if (cfg.M_t < 1) err << "M_t must be >= 1; ";
  if (!(cfg.c > 0)) err << "c must be positive; ";
  if (!(cfg.f_st > 0)) err << "f_st must be positive; ";
  const std::string msg = err.str();
  if (!msg.empty()) throw ConfigError("invalid radar config: " + msg.substr(0, msg.size() - 2));

  if (cfg.M_t > 1 && std::abs(cfg.delta_t - cfg.M_r * cfg.delta) > 1e-9 * cfg.delta) {
    std::ostringstream w;
    w << "delta_t = " << cfg.delta_t << " differs from M_r * delta = " << cfg.M_r * cfg.delta
      << "; the virtual array is not uniform";
    warn(w.str());
  }
}

DerivedParams derive_params(const RadarConfig& cfg) {
  validate(cfg);
  DerivedParams dp;
  dp.delta_f = cfg.B / cfg.K;
  dp.f_c = cfg.f0 + 0.5 * (cfg.K - 1) * dp.delta_f;
  dp.M = cfg.M_r * cfg.M_t;
  dp.d_max = cfg.c / (2.0 * dp.delta_f);
  dp.Delta_d = cfg.c / (2.0 * cfg.B);
  dp.delta_d = cfg.c / (2.0 * dp.delta_f * cfg.N);
  const double k0 = std::floor(cfg.c / (2.0 * cfg.delta * dp.delta_f) - cfg.f0 / dp.delta_f);
  dp.K0 = static_cast<int>(std::clamp(k0, 1.0, static_cast<double>(cfg.K)));
  return dp;
}

CartesianLocation polar_to_cartesian(const PolarLocation& loc) {
  return {loc.d * std::sin(loc.theta), loc.d * std::cos(loc.theta)};
}

PolarLocation cartesian_to_polar(const CartesianLocation& loc) {
  return {std::hypot(loc.x, loc.y), std::atan2(loc.x, loc.y)};
}

double distance(const PolarLocation& a, const PolarLocation& b) {
  const auto ca = polar_to_cartesian(a);
  const auto cb = polar_to_cartesian(b);
  return std::hypot(ca.x - cb.x, ca.y - cb.y);
}

}  // namespace sfcw
