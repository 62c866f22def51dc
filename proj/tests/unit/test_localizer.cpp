#include "helpers.hpp"

#include <cmath>

#include "sfcw/localizer.hpp"
#include "sfcw/simulator.hpp"

using namespace sfcw;
using testutil::cd;

namespace {

PersonModel still(double d, double theta_deg, cd amp = {1, 0}) {
  PersonModel p;
  p.location = {d, deg2rad(theta_deg)};
  p.amplitude = amp;
  p.breath_amp = p.heart_amp = 0;
  return p;
}

MeasurementCube scene_cube(std::vector<PersonModel> persons, int L = 20,
                           const RadarConfig& cfg = walabot_config()) {
  Scene sc;
  sc.L = L;
  sc.persons = std::move(persons);
  return simulate(sc, cfg);
}

Eigen::MatrixXcd exchange(Eigen::Index n) {
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) J(i, n - 1 - i) = 1;
  return J;
}

PolarLocation global_max(const PseudoSpectrum& s) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.values.size(); ++i)
    if (s.values[i] > s.values[best]) best = i;
  const int nt = s.grid.n_theta();
  return {s.grid.d_at(static_cast<int>(best / nt)), s.grid.theta_at(static_cast<int>(best % nt))};
}

bool near_cell(const PolarLocation& a, double d, double theta_deg, const GridSpec& g) {
  return std::abs(a.d - d) <= 0.5 * g.d_step + 1e-9 &&
         std::abs(a.theta - deg2rad(theta_deg)) <= 0.5 * g.theta_step + 1e-9;
}

}  // namespace

TEST_CASE("slice counts") {
  CHECK(SmoothingSpec{38, 2}.slice_count(137, 8) == 700);
  CHECK(SmoothingSpec{38, 3}.slice_count(137, 8) == 600);
  CHECK(SmoothingSpec{137, 8}.slice_count(137, 8) == 1);
  CHECK_THROWS_AS(SmoothingSpec({138, 2}).check(137, 8), ArgumentError);
  CHECK_THROWS_AS(SmoothingSpec({38, 9}).check(137, 8), ArgumentError);
}

TEST_CASE("slice matrix stacks slices with the frequency offset fastest") {
  RowMajorMatrixXcd S(4, 3);
  for (int k = 0; k < 4; ++k)
    for (int m = 0; m < 3; ++m) S(k, m) = cd(k, m);
  const auto X = slice_matrix(ConstSnapshot(S.data(), 4, 3), SmoothingSpec{2, 2});
  REQUIRE(X.rows() == 4);
  REQUIRE(X.cols() == 6);
  // Column i + j*3 holds vec(S[i:i+2, j:j+2]) column-wise.
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i)
      for (int mm = 0; mm < 2; ++mm)
        for (int kk = 0; kk < 2; ++kk) CHECK(X(kk + 2 * mm, i + 3 * j) == cd(i + kk, j + mm));
}

TEST_CASE("snapshot indices sit at sub-interval centres") {
  CHECK(snapshot_indices(200, 10) == std::vector<int>{10, 30, 50, 70, 90, 110, 130, 150, 170, 190});
  CHECK(snapshot_indices(5, 1) == std::vector<int>{2});
  CHECK_THROWS_AS(snapshot_indices(5, 6), ArgumentError);
}

TEST_CASE("single slice covariance is rank one") {
  const auto cube = scene_cube({still(2, 10), still(3, -20, {0.5, 0.2})}, 3, testutil::small_config(24, 4));
  const auto cov = smoothed_covariance(cube.view().slice(1, 1), SmoothingSpec{24, 4}, 1);
  CHECK(cov.n_slices == 1);
  // Forward-backward averaging of a rank-one matrix yields at most rank two.
  CHECK(cov.eigvals(2) <= 1e-10 * cov.eigvals(0));
  const auto X = slice_matrix(cube.view().snapshot(1), SmoothingSpec{24, 4});
  const Eigen::MatrixXcd Rt = X * X.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Rt);
  CHECK(es.eigenvalues()(Rt.rows() - 2) <= 1e-10 * es.eigenvalues()(Rt.rows() - 1));
}

TEST_CASE("forward-backward 2x2 hand case") {
  Eigen::MatrixXcd R(2, 2);
  R << 2, cd(0, 1), cd(0, -1), 1;
  // J R^H J swaps both indices of R^H: [[1, -j], [j, 2]]; the average is 1.5 I.
  const Eigen::MatrixXcd out = forward_backward(R);
  CHECK(std::abs(out(0, 0) - 1.5) < 1e-15);
  CHECK(std::abs(out(1, 1) - 1.5) < 1e-15);
  CHECK(std::abs(out(0, 1)) < 1e-15);
  CHECK(std::abs(out(1, 0)) < 1e-15);
  const auto J = exchange(2);
  CHECK((out - 0.5 * (R + J * R.adjoint() * J)).norm() < 1e-15);
}

TEST_CASE("forward-backward on a general matrix") {
  testutil::Gen g(2);
  Eigen::MatrixXcd A(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) A(i, j) = g.complex_normal();
  const auto J = exchange(5);
  CHECK((forward_backward(A) - 0.5 * (A + J * A.adjoint() * J)).norm() < 1e-14);
}

TEST_CASE("covariance invariants on a simulated segment") {
  Scene sc;
  sc.L = 60;
  sc.clutter.noise_std = 0.1;
  sc.persons = {still(1.8, 20), still(2.6, -45, {0.3, 0.6})};
  sc.persons[0].breath_amp = 3e-3;
  const auto cube = simulate(sc, walabot_config());
  const auto cov = smoothed_covariance(cube.view(), SmoothingSpec{38, 2}, 10);
  const auto& R = cov.R;
  const double nr = R.norm();
  const auto J = exchange(R.rows());
  CHECK((R - R.adjoint()).norm() <= 1e-12 * nr);
  CHECK((J * R.adjoint() * J - R).norm() <= 1e-12 * nr);
  for (Eigen::Index i = 1; i < cov.eigvals.size(); ++i) CHECK(cov.eigvals(i) <= cov.eigvals(i - 1));
  CHECK(cov.eigvals.minCoeff() >= -1e-10 * cov.eigvals(0));
  const Eigen::MatrixXcd rec = cov.eigvecs * cov.eigvals.asDiagonal() * cov.eigvecs.adjoint();
  CHECK((rec - R).norm() <= 1e-10 * nr);
  CHECK(cov.n_slices == 700);
  CHECK(cov.n_snapshots == 10);
}

TEST_CASE("smoothing decorrelates coherent sources") {
  const auto cube = scene_cube({still(2.0, -20), still(2.9, 35, {0.8, -0.4})}, 1, testutil::small_config(24, 4));
  const auto X = slice_matrix(cube.view().snapshot(0), SmoothingSpec{24, 4});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X * X.adjoint());
  const auto ev = es.eigenvalues();
  CHECK(ev(ev.size() - 2) <= 1e-10 * ev(ev.size() - 1));
  const auto smooth = smoothed_covariance(cube.view(), SmoothingSpec{12, 2}, 1);
  int above = 0;
  for (Eigen::Index i = 0; i < smooth.eigvals.size(); ++i)
    if (smooth.eigvals(i) > 1e-6 * smooth.eigvals(0)) ++above;
  CHECK(above >= 2);
}

TEST_CASE("steering matrix") {
  const RadarConfig cfg = walabot_config();
  const auto A0 = steering_matrix(0, 0, 5, 3, cfg);
  CHECK((A0 - Eigen::MatrixXcd::Ones(5, 3)).norm() < 1e-15);

  const auto A = steering_matrix(1.0, deg2rad(30), 4, 2, cfg);
  const double df = cfg.B / cfg.K;
  const cd ref = std::exp(cd(0, -2 * kPi * (cfg.f0 + df) * (2.0 + 0.01) / cfg.c));
  CHECK(std::abs(A(1, 1) - ref) < 1e-9);

  const auto a = steering_vector(1.0, deg2rad(30), 4, 2, cfg);
  CHECK(a.size() == 8);
  CHECK(a(1 + 4 * 1) == A(1, 1));

  // Offsets select a block of the full-array steering matrix.
  const auto full = steering_matrix(1.3, deg2rad(-25), 137, 8, cfg);
  const auto block = steering_matrix(1.3, deg2rad(-25), 38, 2, cfg, 40, 3);
  CHECK((block - full.block(40, 3, 38, 2)).norm() < 1e-9);
}

TEST_CASE("grid dimensions") {
  GridSpec g;
  CHECK(g.n_d() == 181);
  CHECK(g.n_theta() == 145);
  CHECK(g.theta_at(0) == doctest::Approx(-0.4 * kPi));
  CHECK(g.theta_at(144) == doctest::Approx(0.4 * kPi));
  GridSpec h{2.0, 0.3, deg2rad(10), deg2rad(3)};
  CHECK(h.n_d() == 7);
  CHECK(h.n_theta() == 7);
  CHECK_THROWS_AS((GridSpec{1, 0, 1, 1}).check(), ArgumentError);
}

TEST_CASE("noiseless single target peaks at its grid cell") {
  const RadarConfig cfg = walabot_config();
  const GridSpec grid;
  struct Case {
    double d, theta;
    int P_sub;
  };
  // Each source contributes an eigenvalue pair, so one pair (P_sub = 2) is needed off
  // broadside; on broadside a single eigenvector already spans it.
  for (const Case c : {Case{2, 0, 1}, Case{3.2, -10, 1}, Case{3, -30, 2}, Case{2.5, 15, 2},
                       Case{1.5, 40, 2}, Case{3, -30, 15}}) {
    const auto cube = scene_cube({still(c.d, c.theta)});
    const auto cov = smoothed_covariance(cube.view(), SmoothingSpec{38, 2}, 10);
    const auto s = music_spectrum(cov, c.P_sub, 38, 2, grid, cfg);
    CAPTURE(c.d);
    CAPTURE(c.theta);
    CHECK(near_cell(global_max(s), c.d, c.theta, grid));
    CHECK(*std::min_element(s.values.begin(), s.values.end()) > 0);
  }
}

TEST_CASE("argmax is invariant to cube scaling") {
  const RadarConfig cfg = walabot_config();
  auto cube = scene_cube({still(2.2, 12)});
  const auto s1 = music_spectrum(smoothed_covariance(cube.view(), {38, 2}, 10), 2, 38, 2, {}, cfg);
  for (auto& x : cube.samples) x *= 1e4;
  const auto s2 = music_spectrum(smoothed_covariance(cube.view(), {38, 2}, 10), 2, 38, 2, {}, cfg);
  CHECK(global_max(s1).d == global_max(s2).d);
  CHECK(global_max(s1).theta == global_max(s2).theta);
}

TEST_CASE("first-slice steering reference biases off-broadside angles outward") {
  const RadarConfig cfg = walabot_config();
  const auto cube = scene_cube({still(3, -30)});
  const auto cov = smoothed_covariance(cube.view(), SmoothingSpec{38, 2}, 10);
  const auto centered = global_max(music_spectrum(cov, 15, 38, 2, {}, cfg, SteeringReference::Centered));
  const auto first = global_max(music_spectrum(cov, 15, 38, 2, {}, cfg, SteeringReference::FirstSlice));
  CHECK(rad2deg(centered.theta) == doctest::Approx(-30));
  CHECK(rad2deg(first.theta) < -31);
  CHECK(parse_steering_reference("first") == SteeringReference::FirstSlice);
  CHECK_THROWS_AS(parse_steering_reference("middle"), ArgumentError);
}

TEST_CASE("two targets in one range bin are resolved") {
  const RadarConfig cfg = walabot_config();
  const auto cube = scene_cube({still(2, -30), still(2, 30, std::polar(1.0, 1.0))});
  const auto cov = smoothed_covariance(cube.view(), SmoothingSpec{38, 2}, 10);
  const auto s = music_spectrum(cov, 4, 38, 2, {}, cfg);
  const auto peaks = local_maxima(s);
  REQUIRE(peaks.size() >= 2);
  bool left = false, right = false;
  for (int i = 0; i < 2; ++i) {
    left |= near_cell(peaks[i].location, 2, -30, s.grid);
    right |= near_cell(peaks[i].location, 2, 30, s.grid);
  }
  CHECK(left);
  CHECK(right);
}

TEST_CASE("music argument checks") {
  const RadarConfig cfg = walabot_config();
  const auto cube = scene_cube({still(2, 0)});
  const auto cov = smoothed_covariance(cube.view(), SmoothingSpec{38, 2}, 10);
  CHECK_THROWS_AS(music_spectrum(cov, 76, 38, 2, {}, cfg), ArgumentError);
  CHECK_THROWS_AS(music_spectrum(cov, 3, 38, 3, {}, cfg), ArgumentError);
}

TEST_CASE("spectrum accumulation") {
  GridSpec g{1.0, 0.5, deg2rad(10), deg2rad(10)};
  auto a = PseudoSpectrum::zeros(g);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] = 1.0 + i;
  const auto z = PseudoSpectrum::zeros(g);
  CHECK(accumulate_spectrum(z, a).values == a.values);
  const auto twice = accumulate_spectrum(a, a);
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(twice.values[i] == 2 * a.values[i]);
  GridSpec h = g;
  h.d_step = 0.25;
  CHECK_THROWS_AS(accumulate_spectrum(a, PseudoSpectrum::zeros(h)), ArgumentError);
}

TEST_CASE("peak extraction") {
  GridSpec g{2.0, 0.05, deg2rad(30), deg2rad(1)};
  auto s = PseudoSpectrum::zeros(g);
  for (auto& v : s.values) v = 1.0;

  SUBCASE("single peak") {
    s.at(20, 30) = 5;
    const auto det = extract_peaks(s, 1, 0.3);
    REQUIRE(det.detections.size() == 1);
    CHECK(det.detections[0].location.d == doctest::Approx(1.0));
    CHECK(det.detections[0].location.theta == doctest::Approx(0.0));
    CHECK(!det.short_of_target);
  }
  SUBCASE("close maxima are grouped") {
    s.at(20, 30) = 9;  // (1.00 m, 0 deg)
    s.at(22, 30) = 8;  // (1.10 m, 0 deg), 10 cm away
    s.at(30, 50) = 4;  // (1.50 m, 20 deg)
    const auto det = extract_peaks(s, 2, 0.3);
    REQUIRE(det.detections.size() == 2);
    CHECK(det.detections[0].location.d == doctest::Approx(1.0));
    CHECK(det.detections[0].merged == 1);
    CHECK(det.detections[1].location.d == doctest::Approx(1.5));
    CHECK(det.detections[1].location.theta == doctest::Approx(deg2rad(20)));
  }
  SUBCASE("zero order") { CHECK(extract_peaks(s, 0, 0.3).detections.empty()); }
  SUBCASE("fewer peaks than requested") {
    s.at(20, 30) = 2;
    const auto det = extract_peaks(s, 3, 0.3);
    CHECK(det.detections.size() < 3);
    CHECK(det.short_of_target);
  }
}

TEST_CASE("spectrum csv") {
  GridSpec g{0.5, 0.5, deg2rad(1), deg2rad(1)};
  auto s = PseudoSpectrum::zeros(g);
  const auto csv = spectrum_csv(s);
  CHECK(csv.rfind("d_m,theta_rad,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 3);
}
