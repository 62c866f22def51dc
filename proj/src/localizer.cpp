#include "sfcw/localizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sfcw/errors.hpp"
#include "sfcw/parallel.hpp"

namespace sfcw {

void SmoothingSpec::check(int K_used, int M) const {
  if (W_K < 1 || W_K > K_used || W_M < 1 || W_M > M) {
    std::ostringstream err;
    err << "smoothing window " << W_K << "x" << W_M << " does not fit a " << K_used << "x" << M
        << " signal matrix";
    throw ArgumentError(err.str());
  }
}

std::vector<int> snapshot_indices(int L, int n_cov) {
  if (n_cov < 1) throw ArgumentError("n_cov must be >= 1");
  if (n_cov > L) {
    throw ArgumentError("n_cov = " + std::to_string(n_cov) + " exceeds segment length " +
                        std::to_string(L));
  }
  std::vector<int> idx(n_cov);
  for (int i = 0; i < n_cov; ++i) {
    idx[i] = static_cast<int>((2LL * i + 1) * L / (2LL * n_cov));
  }
  return idx;
}

Eigen::MatrixXcd slice_matrix(const ConstSnapshot& S, const SmoothingSpec& spec) {
  const int K = static_cast<int>(S.rows());
  const int M = static_cast<int>(S.cols());
  spec.check(K, M);
  const int nk = K - spec.W_K + 1;
  const int nm = M - spec.W_M + 1;
  Eigen::MatrixXcd X(spec.dimension(), nk * nm);
  for (int j = 0; j < nm; ++j) {
    for (int i = 0; i < nk; ++i) {
      const int col = i + j * nk;
      for (int mm = 0; mm < spec.W_M; ++mm) {
        for (int kk = 0; kk < spec.W_K; ++kk) {
          X(kk + mm * spec.W_K, col) = S(i + kk, j + mm);
        }
      }
    }
  }
  return X;
}

Eigen::MatrixXcd forward_backward(const Eigen::MatrixXcd& R) {
  const Eigen::Index n = R.rows();
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      // (J R^H J)(a, b) = conj(R(n-1-b, n-1-a))
      out(a, b) = 0.5 * (R(a, b) + std::conj(R(n - 1 - b, n - 1 - a)));
    }
  }
  return out;
}

void decompose(CovarianceEstimate& cov) {
  if (!cov.R.allFinite()) throw NumericError("covariance has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(cov.R);
  if (solver.info() != Eigen::Success) throw NumericError("covariance eigen-decomposition failed");
  const Eigen::Index n = cov.R.rows();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return ev(a) > ev(b); });
  cov.eigvals.resize(n);
  cov.eigvecs.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cov.eigvals(i) = ev(order[i]);
    cov.eigvecs.col(i) = solver.eigenvectors().col(order[i]);
  }
}

CovarianceEstimate smoothed_covariance(const CubeView& segment, const SmoothingSpec& spec, int n_cov) {
  spec.check(segment.K(), segment.M());
  const auto idx = snapshot_indices(segment.L(), n_cov);
  const int n = spec.dimension();
  CovarianceEstimate cov;
  cov.n_slices = spec.slice_count(segment.K(), segment.M());
  cov.n_snapshots = n_cov;

  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(n, n);
  for (int l : idx) {
    const Eigen::MatrixXcd X = slice_matrix(segment.snapshot(l), spec);
    R.noalias() += X * X.adjoint();
  }
  R /= static_cast<double>(cov.n_slices) * n_cov;
  // Exact Hermitian symmetry before averaging keeps the result persymmetric and Hermitian.
  const Eigen::MatrixXcd Rh = 0.5 * (R + R.adjoint());
  cov.R = forward_backward(Rh);
  decompose(cov);
  return cov;
}

Eigen::MatrixXcd steering_matrix(double d, double theta, int W_K, int W_M, const RadarConfig& cfg,
                                 double k_offset, double m_offset) {
  const double df = cfg.B / cfg.K;
  const double s = std::sin(theta);
  Eigen::MatrixXcd A(W_K, W_M);
  for (int m = 0; m < W_M; ++m) {
    const double path = 2.0 * d + (m + m_offset) * cfg.delta * s;
    for (int k = 0; k < W_K; ++k) {
      A(k, m) = std::polar(1.0, -2.0 * kPi * (cfg.f0 + (k + k_offset) * df) * path / cfg.c);
    }
  }
  return A;
}

Eigen::VectorXcd steering_vector(double d, double theta, int W_K, int W_M, const RadarConfig& cfg,
                                 double k_offset, double m_offset) {
  const Eigen::MatrixXcd A = steering_matrix(d, theta, W_K, W_M, cfg, k_offset, m_offset);
  return Eigen::Map<const Eigen::VectorXcd>(A.data(), A.size());
}

int GridSpec::n_d() const { return static_cast<int>(std::floor(d_hi / d_step + 1 + 1e-9)); }

int GridSpec::n_theta() const {
  return static_cast<int>(std::floor(2 * theta_max / theta_step + 1 + 1e-9));
}

void GridSpec::check() const {
  if (!(d_hi >= 0) || !(d_step > 0) || !(theta_max >= 0) || !(theta_step > 0) ||
      theta_max >= kPi / 2) {
    throw ArgumentError("invalid grid: need d_hi >= 0, steps > 0, 0 <= theta_max < pi/2");
  }
}

PseudoSpectrum PseudoSpectrum::zeros(const GridSpec& grid) {
  grid.check();
  PseudoSpectrum s;
  s.grid = grid;
  s.values.assign(static_cast<std::size_t>(grid.n_d()) * grid.n_theta(), 0.0);
  return s;
}

PseudoSpectrum music_spectrum(const CovarianceEstimate& cov, int P_sub, int W_K, int W_M,
                              const GridSpec& grid, const RadarConfig& cfg, SteeringReference ref) {
  const int n = static_cast<int>(cov.R.rows());
  if (W_K * W_M != n) throw ArgumentError("music_spectrum: window does not match covariance size");
  if (P_sub < 0 || P_sub >= n) {
    throw ArgumentError("music_spectrum: P_sub = " + std::to_string(P_sub) +
                        " must be below the matrix dimension " + std::to_string(n));
  }
  PseudoSpectrum out = PseudoSpectrum::zeros(grid);
  const int nd = grid.n_d();
  const int nt = grid.n_theta();
  // ||V_n^H a||^2 == a^H V_n V_n^H a.
  const Eigen::MatrixXcd VnH = cov.eigvecs.rightCols(n - P_sub).adjoint();
  const double df = cfg.B / cfg.K;
  const bool centered = ref == SteeringReference::Centered;
  const double k_off = centered ? 0.5 * (cfg.K - W_K) : 0.0;
  const double m_off = centered ? 0.5 * (cfg.channels() - W_M) : 0.0;
  std::vector<double> sines(nt);
  for (int j = 0; j < nt; ++j) sines[j] = std::sin(grid.theta_at(j));

  parallel_for(static_cast<std::size_t>(nd), [&](std::size_t i) {
    const double d = grid.d_at(static_cast<int>(i));
    Eigen::MatrixXcd A(n, nt);
    for (int j = 0; j < nt; ++j) {
      for (int m = 0; m < W_M; ++m) {
        const double path = 2.0 * d + (m + m_off) * cfg.delta * sines[j];
        for (int k = 0; k < W_K; ++k) {
          A(k + m * W_K, j) = std::polar(1.0, -2.0 * kPi * (cfg.f0 + (k + k_off) * df) * path / cfg.c);
        }
      }
    }
    const Eigen::RowVectorXd proj = (VnH * A).colwise().squaredNorm();
    for (int j = 0; j < nt; ++j) {
      const double denom = std::max(proj(j), std::numeric_limits<double>::min());
      out.values[i * nt + j] = 1.0 / denom;
    }
  });
  return out;
}

PseudoSpectrum accumulate_spectrum(const PseudoSpectrum& running, const PseudoSpectrum& current) {
  if (!(running.grid == current.grid) || running.values.size() != current.values.size()) {
    throw ArgumentError("accumulate_spectrum: grid mismatch");
  }
  PseudoSpectrum out = running;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += current.values[i];
  return out;
}

SteeringReference parse_steering_reference(const std::string& name) {
  if (name == "centered") return SteeringReference::Centered;
  if (name == "first") return SteeringReference::FirstSlice;
  throw ArgumentError("unknown steering reference '" + name + "' (expected centered or first)");
}

std::vector<Detection> local_maxima(const PseudoSpectrum& spectrum) {
  const int nd = spectrum.grid.n_d();
  const int nt = spectrum.grid.n_theta();
  struct Candidate {
    std::size_t index;
    double value;
  };
  std::vector<Candidate> cands;
  for (int i = 0; i < nd; ++i) {
    for (int j = 0; j < nt; ++j) {
      const double v = spectrum.at(i, j);
      const std::size_t self = static_cast<std::size_t>(i) * nt + j;
      bool is_max = true;
      for (int di = -1; di <= 1 && is_max; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di;
          const int jj = j + dj;
          if (ii < 0 || ii >= nd || jj < 0 || jj >= nt) continue;
          const double w = spectrum.at(ii, jj);
          const std::size_t other = static_cast<std::size_t>(ii) * nt + jj;
          // Plateaus: only the lowest grid index counts as the maximum.
          if (w > v || (w == v && other < self)) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) cands.push_back({self, v});
    }
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  std::vector<Detection> out;
  out.reserve(cands.size());
  for (const auto& c : cands) {
    const int i = static_cast<int>(c.index / nt);
    const int j = static_cast<int>(c.index % nt);
    out.push_back({{spectrum.grid.d_at(i), spectrum.grid.theta_at(j)}, c.value, 0});
  }
  return out;
}

DetectionSet extract_peaks(const PseudoSpectrum& spectrum, int P_hat, double group_radius) {
  if (P_hat < 0) throw ArgumentError("extract_peaks: P_hat must be >= 0");
  DetectionSet out;
  if (P_hat == 0) return out;
  for (const auto& cand : local_maxima(spectrum)) {
    if (static_cast<int>(out.detections.size()) == P_hat) break;
    int nearest = -1;
    double nearest_dist = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < out.detections.size(); ++a) {
      const double dist = distance(cand.location, out.detections[a].location);
      if (dist < nearest_dist) {
        nearest_dist = dist;
        nearest = static_cast<int>(a);
      }
    }
    if (nearest >= 0 && nearest_dist < group_radius) {
      ++out.detections[nearest].merged;
    } else {
      out.detections.push_back(cand);
    }
  }
  out.short_of_target = static_cast<int>(out.detections.size()) < P_hat;
  return out;
}

std::string spectrum_csv(const PseudoSpectrum& spectrum) {
  std::ostringstream os;
  os.precision(17);
  os << "d_m,theta_rad,value\n";
  const int nd = spectrum.grid.n_d();
  const int nt = spectrum.grid.n_theta();
  for (int i = 0; i < nd; ++i) {
    for (int j = 0; j < nt; ++j) {
      os << spectrum.grid.d_at(i) << ',' << spectrum.grid.theta_at(j) << ',' << spectrum.at(i, j)
         << '\n';
    }
  }
  return os.str();
}

}  // namespace sfcw
