#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sfcw/localizer.hpp"

namespace sfcw {

struct ModelOrderConfig {
  double alpha = 3.0;
  int n_candidates = 5;
  int D = 0;           // index cap; see index_cap()
  int max_order = 15;  // upper bound on the returned order
};

/// min(2 W_KM, W_M W_K): eigenvalues at or beyond this index are not used.
int index_cap(const SmoothingSpec& spec, int K_used, int M);

/// RD(i) = (lambda_i - lambda_{i+1}) / lambda_{i+1} for i = 1..D-1 (returned 0-based, so
/// element i-1 holds RD(i)). Non-positive eigenvalues are floored at 1e-300 * lambda_1.
std::vector<double> relative_distances(const Eigen::VectorXd& lambda, int D);

struct OrderEstimate {
  int P_hat = 0;
  int beta = 0;                 // selected 1-based index, 0 when none qualified
  std::vector<double> rd;       // RD(1..D-1)
  std::vector<int> candidates;  // 1-based indices, strongest first
  std::vector<double> thresholds;  // alpha/(D-beta) * sum_{j>beta} lambda_j per candidate
};

/// Relative-distance order estimate: candidates are the n_candidates strongest RD local
/// maxima; scanning them from the largest index down, the first beta with
/// lambda_beta >= alpha/(D-beta) * sum_{j=beta+1..D} lambda_j gives P_hat = ceil(beta/2).
OrderEstimate estimate_order_detail(const Eigen::VectorXd& lambda, const ModelOrderConfig& cfg);

int estimate_order(const Eigen::VectorXd& lambda, const ModelOrderConfig& cfg);

/// CSV with columns index,lambda,rd,candidate,threshold,selected.
std::string order_csv(const Eigen::VectorXd& lambda, const OrderEstimate& est);

}  // namespace sfcw
