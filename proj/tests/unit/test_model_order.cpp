#include "helpers.hpp"

#include "sfcw/model_order.hpp"

using namespace sfcw;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Eigen::VectorXd with_tail(std::initializer_list<double> head, int n_ones) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(head.size()) + n_ones);
  Eigen::Index i = 0;
  for (double x : head) out(i++) = x;
  for (; i < out.size(); ++i) out(i) = 1.0;
  return out;
}

}  // namespace

TEST_CASE("index cap") {
  CHECK(index_cap({38, 3}, 137, 8) == 114);
  CHECK(index_cap({38, 2}, 137, 8) == 76);
  CHECK(index_cap({137, 8}, 137, 8) == 2);
}

TEST_CASE("relative distances") {
  const auto rd = relative_distances(vec({4, 2, 1}), 0);
  REQUIRE(rd.size() == 2);
  CHECK(rd[0] == doctest::Approx(1.0));
  CHECK(rd[1] == doctest::Approx(1.0));
  const auto capped = relative_distances(vec({10, 5, 1, 0.5}), 3);
  REQUIRE(capped.size() == 2);
  CHECK(capped[0] == doctest::Approx(1.0));
  CHECK(capped[1] == doctest::Approx(4.0));
  CHECK_THROWS_AS(relative_distances(vec({1}), 0), ArgumentError);
  CHECK_THROWS_AS(relative_distances(vec({3, 2, 1}), 4), ArgumentError);
}

TEST_CASE("non-positive eigenvalues are floored with a warning") {
  testutil::WarningCapture w;
  const auto rd = relative_distances(vec({2, 1, 0, -1e-12}), 0);
  CHECK(std::isfinite(rd[1]));
  CHECK(rd[1] > 1e200);
  CHECK(rd[2] == 0.0);
  CHECK(!w.messages.empty());
}

TEST_CASE("two pairs over a flat noise floor") {
  // RD = 0, 1, 0, 3, 0, ...: candidates 4 then 2; lambda_4 = 4 >= 3/8 * 8.
  const auto lambda = with_tail({8, 8, 4, 4}, 8);
  const auto est = estimate_order_detail(lambda, {});
  CHECK(est.candidates == std::vector<int>{4, 2});
  CHECK(est.beta == 4);
  CHECK(est.P_hat == 2);
  REQUIRE(est.thresholds.size() == 2);
  CHECK(est.thresholds[0] == doctest::Approx(3.0));
  CHECK(est.thresholds[1] == doctest::Approx(3.0 / 10 * 16));
}

TEST_CASE("knee after eight eigenvalues gives four sources") {
  Eigen::VectorXd lambda(76);
  for (int i = 0; i < 8; ++i) lambda(i) = 400.0 - 30.0 * i;
  for (int i = 8; i < 76; ++i) lambda(i) = 1.0 - 0.004 * (i - 8);
  const auto est = estimate_order_detail(lambda, {});
  CHECK(est.beta == 8);
  CHECK(est.P_hat == 4);
}

TEST_CASE("odd selected index rounds up") {
  CHECK(estimate_order(with_tail({5}, 9), {}) == 1);
  CHECK(estimate_order(with_tail({9, 9, 9}, 9), {}) == 2);
}

TEST_CASE("no source") {
  CHECK(estimate_order(with_tail({}, 20), {}) == 0);
  // RD peak below the energy threshold: 1.5 < 3/9 * 9.
  const auto est = estimate_order_detail(with_tail({1.5}, 9), {});
  CHECK(est.candidates == std::vector<int>{1});
  CHECK(est.beta == 0);
  CHECK(est.P_hat == 0);
}

TEST_CASE("the last relative distance is not a candidate") {
  const auto est = estimate_order_detail(vec({1, 1, 1, 1, 0.01}), {});
  CHECK(est.candidates.empty());
  CHECK(est.P_hat == 0);
}

TEST_CASE("candidate limit and order cap") {
  // RD peaks at 2 (99), 6 (4) and 4 (1).
  const auto lambda = with_tail({1000, 1000, 10, 10, 5, 5}, 16);
  ModelOrderConfig cfg;
  cfg.n_candidates = 1;
  const auto one = estimate_order_detail(lambda, cfg);
  CHECK(one.candidates == std::vector<int>{2});
  CHECK(one.P_hat == 1);
  CHECK(estimate_order(lambda, {}) == 3);
  cfg = {};
  cfg.max_order = 2;
  CHECK(estimate_order(lambda, cfg) == 2);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(estimate_order(vec({1}), {}), ArgumentError);
  ModelOrderConfig cfg;
  cfg.alpha = 0.5;
  CHECK_THROWS_AS(estimate_order(vec({2, 1}), cfg), ArgumentError);
}

TEST_CASE("order csv") {
  const auto lambda = with_tail({8, 8, 4, 4}, 8);
  const auto est = estimate_order_detail(lambda, {});
  const auto csv = order_csv(lambda, est);
  CHECK(csv.rfind("index,lambda,rd,candidate,threshold,selected\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
  CHECK(csv.find("\n4,4,3,1,3,1\n") != std::string::npos);
  CHECK(csv.find("\n12,1,,0,,0\n") != std::string::npos);
}
