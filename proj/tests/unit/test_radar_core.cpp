#include "helpers.hpp"

#include <cmath>

#include "sfcw/radar_config.hpp"

using namespace sfcw;
using testutil::Gen;

TEST_CASE("walabot derived parameters") {
  const RadarConfig cfg = walabot_config();
  const DerivedParams dp = derive_params(cfg);
  const double c = 2.99792458e8;
  CHECK(dp.delta_f == doctest::Approx(1.7e9 / 137).epsilon(1e-15));
  CHECK(dp.d_max == doctest::Approx(12.08).epsilon(0.01 / 12.08));
  CHECK(std::abs(dp.Delta_d - 0.088) < 0.001);
  CHECK(dp.Delta_d == doctest::Approx(c / 3.4e9));
  CHECK(dp.K0 == 96);
  CHECK(std::abs(dp.f_c - 7.15e9) < 0.01e9);
  CHECK(dp.M == 8);
  CHECK(dp.delta_d == doctest::Approx(c / (2 * dp.delta_f * 8192)));
}

TEST_CASE("K0 from the spatial sampling bound") {
  const RadarConfig cfg = walabot_config();
  const double df = cfg.B / cfg.K;
  // Largest K0 with f0 + K0 df <= c / (2 delta).
  int k0 = 0;
  while (cfg.f0 + (k0 + 1) * df <= cfg.c / (2 * cfg.delta)) ++k0;
  CHECK(derive_params(cfg).K0 == k0);
}

TEST_CASE("invalid configs are rejected") {
  RadarConfig cfg = walabot_config();
  cfg.K = 1;
  cfg.B = kSpeedOfLight / 2;
  CHECK_THROWS_AS(derive_params(cfg), ConfigError);
  cfg = walabot_config();
  cfg.B = 0;
  CHECK_THROWS_AS(derive_params(cfg), ConfigError);
  cfg = walabot_config();
  cfg.N = 100;
  CHECK_THROWS_AS(derive_params(cfg), ConfigError);
  cfg = walabot_config();
  cfg.delta = -1;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("d_max identity") {
  RadarConfig cfg = walabot_config();
  cfg.K = 4;
  cfg.B = 4 * kSpeedOfLight / 4;  // delta_f = c/4
  CHECK(derive_params(cfg).d_max == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("non-uniform virtual array warns") {
  testutil::WarningCapture w;
  RadarConfig cfg = walabot_config();
  cfg.delta_t = 0.05;
  CHECK_NOTHROW(derive_params(cfg));
  REQUIRE(w.messages.size() == 1);
  CHECK(w.messages[0].find("delta_t") != std::string::npos);
}

TEST_CASE("polar to cartesian") {
  auto a = polar_to_cartesian({2, 0});
  CHECK(a.x == doctest::Approx(0));
  CHECK(a.y == doctest::Approx(2));
  auto b = polar_to_cartesian({1, kPi / 2 - 1e-9});
  CHECK(b.x == doctest::Approx(1));
  CHECK(std::abs(b.y) < 1e-8);
  auto c = polar_to_cartesian({1.5, -kPi / 3});
  CHECK(c.x == doctest::Approx(-1.5 * std::sqrt(3.0) / 2));
  CHECK(c.x == doctest::Approx(-1.299).epsilon(1e-3));
  CHECK(c.y == doctest::Approx(0.75));
}

TEST_CASE("derived parameters are pure") {
  Gen g(11);
  for (int i = 0; i < testutil::kCases; ++i) {
    RadarConfig cfg = walabot_config();
    cfg.f0 = g.uniform(1e9, 20e9);
    cfg.K = g.integer(2, 300);
    cfg.B = g.uniform(0.1e9, 4e9);
    cfg.N = cfg.K + g.integer(0, 4000);
    cfg.delta = g.uniform(0.3, 0.95) * cfg.c / (2 * cfg.f0);
    cfg.delta_t = cfg.M_r * cfg.delta;
    const DerivedParams a = derive_params(cfg);
    const DerivedParams b = derive_params(cfg);
    CHECK(a.delta_f == b.delta_f);
    CHECK(a.f_c == b.f_c);
    CHECK(a.d_max == b.d_max);
    CHECK(a.Delta_d == b.Delta_d);
    CHECK(a.delta_d == b.delta_d);
    CHECK(a.K0 == b.K0);
    CHECK(a.K0 >= 1);
    CHECK(a.K0 <= cfg.K);
    CHECK(cfg.delta <= cfg.c / (2 * (cfg.f0 + (a.K0 - 1) * a.delta_f)));
  }
}

TEST_CASE("polar round trip") {
  Gen g(12);
  for (int i = 0; i < testutil::kCases; ++i) {
    const PolarLocation p{g.uniform(1e-3, 20), g.uniform(-1.5, 1.5)};
    const PolarLocation q = cartesian_to_polar(polar_to_cartesian(p));
    CHECK(std::abs(q.d - p.d) <= 1e-12 * p.d);
    CHECK(std::abs(q.theta - p.theta) <= 1e-12 * std::max(1.0, std::abs(p.theta)));
  }
}

TEST_CASE("distance is Euclidean in the plane") {
  CHECK(distance({1, deg2rad(30)}, {1, deg2rad(50)}) == doctest::Approx(2 * std::sin(deg2rad(10))));
  CHECK(distance({2, 0}, {2.1, 0}) == doctest::Approx(0.1));
}
