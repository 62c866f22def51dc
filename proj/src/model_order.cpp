#include "sfcw/model_order.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sfcw/errors.hpp"

namespace sfcw {

int index_cap(const SmoothingSpec& spec, int K_used, int M) {
  return std::min(2 * spec.slice_count(K_used, M), spec.dimension());
}

namespace {

int effective_cap(const Eigen::VectorXd& lambda, int D) {
  const int n = static_cast<int>(lambda.size());
  if (D <= 0) return n;
  if (D > n) {
    throw ArgumentError("model order: index cap D = " + std::to_string(D) + " exceeds " +
                        std::to_string(n) + " eigenvalues");
  }
  return D;
}

std::vector<double> floored(const Eigen::VectorXd& lambda, int D) {
  std::vector<double> v(lambda.data(), lambda.data() + D);
  const double floor_value = 1e-300 * std::max(v.front(), 1e-300);
  bool clipped = false;
  for (auto& x : v) {
    if (!(x > 0)) {
      x = floor_value;
      clipped = true;
    }
  }
  if (clipped) warn("model order: non-positive eigenvalues floored at 1e-300 * lambda_1");
  return v;
}

}  // namespace

std::vector<double> relative_distances(const Eigen::VectorXd& lambda, int D) {
  if (lambda.size() < 2) throw ArgumentError("relative_distances: need at least 2 eigenvalues");
  D = effective_cap(lambda, D);
  const auto v = floored(lambda, D);
  std::vector<double> rd(D > 0 ? D - 1 : 0);
  for (int i = 0; i + 1 < D; ++i) rd[i] = (v[i] - v[i + 1]) / v[i + 1];
  return rd;
}

OrderEstimate estimate_order_detail(const Eigen::VectorXd& lambda, const ModelOrderConfig& cfg) {
  if (lambda.size() < 2) throw ArgumentError("estimate_order: need at least 2 eigenvalues");
  if (cfg.alpha < 1) throw ArgumentError("estimate_order: alpha must be >= 1");
  const int D = effective_cap(lambda, cfg.D);
  const auto v = floored(lambda, D);

  OrderEstimate est;
  est.rd = relative_distances(lambda, D);
  const auto& rd = est.rd;
  const int nrd = static_cast<int>(rd.size());

  // Local maxima of RD; RD(D-1) has no right neighbour inside the cap and is not eligible.
  struct Peak {
    int index;  // 1-based
    double value;
  };
  std::vector<Peak> peaks;
  for (int i = 0; i + 1 < nrd; ++i) {
    const bool left_ok = (i == 0) || rd[i] > rd[i - 1];
    if (left_ok && rd[i] >= rd[i + 1] && rd[i] > 0) peaks.push_back({i + 1, rd[i]});
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.index > b.index;
  });
  if (static_cast<int>(peaks.size()) > cfg.n_candidates) peaks.resize(cfg.n_candidates);
  for (const auto& p : peaks) est.candidates.push_back(p.index);

  std::vector<int> by_index = est.candidates;
  std::sort(by_index.rbegin(), by_index.rend());
  for (int beta : by_index) {
    double tail = 0.0;
    for (int j = beta; j < D; ++j) tail += v[j];  // lambda_{beta+1..D}, 0-based offset
    const double threshold = cfg.alpha / (D - beta) * tail;
    if (v[beta - 1] >= threshold) {
      est.beta = beta;
      break;
    }
  }
  for (int beta : est.candidates) {
    double tail = 0.0;
    for (int j = beta; j < D; ++j) tail += v[j];
    est.thresholds.push_back(cfg.alpha / (D - beta) * tail);
  }
  est.P_hat = std::min((est.beta + 1) / 2, cfg.max_order);
  return est;
}

int estimate_order(const Eigen::VectorXd& lambda, const ModelOrderConfig& cfg) {
  return estimate_order_detail(lambda, cfg).P_hat;
}

std::string order_csv(const Eigen::VectorXd& lambda, const OrderEstimate& est) {
  std::ostringstream os;
  os.precision(17);
  os << "index,lambda,rd,candidate,threshold,selected\n";
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const int idx = static_cast<int>(i) + 1;
    os << idx << ',' << lambda(i) << ',';
    if (i < static_cast<Eigen::Index>(est.rd.size())) os << est.rd[i];
    const auto it = std::find(est.candidates.begin(), est.candidates.end(), idx);
    const bool cand = it != est.candidates.end();
    os << ',' << (cand ? 1 : 0) << ',';
    if (cand) os << est.thresholds[it - est.candidates.begin()];
    os << ',' << (idx == est.beta ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace sfcw
