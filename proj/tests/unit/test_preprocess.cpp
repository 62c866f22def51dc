#include "helpers.hpp"

#include <cmath>

#include "sfcw/preprocess.hpp"

using namespace sfcw;
using testutil::cd;

TEST_CASE("SMA removes a constant cube") {
  const auto cube = testutil::constant_cube(100, 3, 2, {0.7, -1.3});
  const auto out = sma_filter(cube, 64);
  CHECK(out.L == 37);
  CHECK(testutil::max_abs(out.samples) <= 1e-12);
  CHECK(out.slow_time.front() == cube.slow_time[63]);
  CHECK(out.slow_time.back() == cube.slow_time.back());
}

TEST_CASE("SMA passes an alternating sequence with even window") {
  auto cube = testutil::blank_cube(40, 2, 1);
  for (int l = 0; l < 40; ++l)
    for (int k = 0; k < 2; ++k) cube.at(l, k, 0) = (l % 2 ? -1.0 : 1.0) * cd(1 + k, 0.5);
  const auto out = sma_filter(cube, 8);
  for (int l = 0; l < out.L; ++l)
    for (int k = 0; k < 2; ++k) CHECK(std::abs(out.at(l, k, 0) - cube.at(l + 7, k, 0)) < 1e-15);
}

TEST_CASE("SMA on a slow sinusoid matches the direct trailing average") {
  const int W = 64, L = 300;
  auto cube = testutil::blank_cube(L, 1, 1);
  for (int l = 0; l < L; ++l) cube.at(l, 0, 0) = std::polar(1.0, 2 * kPi * 0.3 * cube.slow_time[l]);
  const auto out = sma_filter(cube, W);
  // Steady-state gain of x - mean(window): |1 - D_W(f)| with the trailing Dirichlet average.
  const double w = 2 * kPi * 0.3 / 10.0;
  cd D{0, 0};
  for (int i = 0; i < W; ++i) D += std::polar(1.0, -w * i);
  D /= double(W);
  for (int l = W - 1; l < L; ++l) {
    cd mean{0, 0};
    for (int i = l - W + 1; i <= l; ++i) mean += cube.at(i, 0, 0);
    mean /= double(W);
    const cd ref = cube.at(l, 0, 0) - mean;
    CHECK(std::abs(out.at(l - W + 1, 0, 0) - ref) < 1e-12);
    CHECK(std::abs(out.at(l - W + 1, 0, 0)) == doctest::Approx(std::abs(1.0 - D)).epsilon(1e-9));
  }
}

TEST_CASE("SMA argument checks") {
  const auto cube = testutil::constant_cube(10, 1, 1, {1, 0});
  CHECK_THROWS_AS(sma_filter(cube, 11), ArgumentError);
  CHECK_THROWS_AS(sma_filter(cube, 0), ArgumentError);
  CHECK(sma_filter(cube, 10).L == 1);
  // W = 1 subtracts the sample itself.
  CHECK(testutil::max_abs(sma_filter(cube, 1).samples) == 0.0);
}

TEST_CASE("SMA is linear and shift covariant") {
  testutil::Gen g(4);
  auto a = testutil::blank_cube(50, 2, 2), b = testutil::blank_cube(50, 2, 2);
  for (auto& s : a.samples) s = g.complex_normal();
  for (auto& s : b.samples) s = g.complex_normal();
  auto ab = a;
  const cd alpha{0.3, -2};
  for (std::size_t i = 0; i < ab.samples.size(); ++i) ab.samples[i] = alpha * a.samples[i] + b.samples[i];
  const auto fa = sma_filter(a, 9), fb = sma_filter(b, 9), fab = sma_filter(ab, 9);
  for (std::size_t i = 0; i < fab.samples.size(); ++i)
    CHECK(std::abs(fab.samples[i] - alpha * fa.samples[i] - fb.samples[i]) < 1e-12);

  // Dropping the first 5 samples shifts the output by 5.
  auto tail = testutil::blank_cube(45, 2, 2);
  std::copy(a.samples.begin() + 5 * 4, a.samples.end(), tail.samples.begin());
  const auto ft = sma_filter(tail, 9);
  for (int l = 0; l < ft.L; ++l)
    for (int k = 0; k < 2; ++k)
      for (int m = 0; m < 2; ++m) CHECK(ft.at(l, k, m) == fa.at(l + 5, k, m));
}

TEST_CASE("segmentation counts") {
  CHECK(segment(testutil::constant_cube(2000, 1, 1, {1, 0}), 200).segments.size() == 10);
  CHECK(segment(testutil::constant_cube(401, 1, 1, {1, 0}), 200).segments.size() == 2);
  {
    testutil::WarningCapture w;
    CHECK(segment(testutil::constant_cube(199, 1, 1, {1, 0}), 200).segments.empty());
    CHECK(w.messages.size() == 1);
  }
  CHECK_THROWS_AS(segment(testutil::constant_cube(10, 1, 1, {1, 0}), 1), ArgumentError);
}

TEST_CASE("segments are views of the original samples") {
  testutil::Gen g(6);
  auto cube = testutil::blank_cube(25, 3, 2);
  for (auto& s : cube.samples) s = g.complex_normal();
  const auto seg = segment(cube, 10);
  REQUIRE(seg.segments.size() == 2);
  for (int s = 0; s < 2; ++s) {
    const auto& v = seg.segments[s];
    CHECK(v.L() == 10);
    for (int l = 0; l < 10; ++l) {
      CHECK(v.slow_time()[l] == cube.slow_time[10 * s + l]);
      for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 2; ++m) CHECK(v.at(l, k, m) == cube.at(10 * s + l, k, m));
    }
    CHECK(v.sampling_rate() == doctest::Approx(10.0));
  }
}
