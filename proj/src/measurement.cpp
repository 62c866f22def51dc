#include "sfcw/measurement.hpp"

#include <sstream>

#include "sfcw/errors.hpp"

namespace sfcw {

CubeView::CubeView(std::span<const cd> samples, std::span<const double> slow_time, int K, int M)
    : samples_(samples), slow_time_(slow_time), K_(K), M_(M) {
  if (samples.size() != slow_time.size() * static_cast<std::size_t>(K) * M) {
    throw ArgumentError("cube view: sample count does not match L*K*M");
  }
}

CubeView CubeView::slice(int l0, int n) const {
  if (l0 < 0 || n < 0 || l0 + n > L()) throw ArgumentError("cube view: slice out of range");
  const std::size_t row = static_cast<std::size_t>(K_) * M_;
  return CubeView(samples_.subspan(l0 * row, n * row), slow_time_.subspan(l0, n), K_, M_);
}

double CubeView::sampling_rate() const {
  if (L() < 2) return 0.0;
  const double span = slow_time_.back() - slow_time_.front();
  return span > 0 ? (L() - 1) / span : 0.0;
}

MeasurementCube::MeasurementCube(const RadarConfig& cfg, int L_, int K_, int M_)
    : config(cfg), L(L_), K(K_), M(M_),
      samples(static_cast<std::size_t>(L_) * K_ * M_),
      slow_time(static_cast<std::size_t>(L_)) {}

void MeasurementCube::check() const {
  std::ostringstream err;
  if (L < 0 || K < 1 || M < 1) err << "invalid dims L=" << L << " K=" << K << " M=" << M;
  else if (samples.size() != static_cast<std::size_t>(L) * K * M)
    err << "sample count " << samples.size() << " != L*K*M = " << static_cast<std::size_t>(L) * K * M;
  else if (slow_time.size() != static_cast<std::size_t>(L))
    err << "slow_time length " << slow_time.size() << " != L = " << L;
  else if (K != config.K)
    err << "K = " << K << " does not match config K = " << config.K;
  else if (M != config.channels())
    err << "M = " << M << " does not match config M_r*M_t = " << config.channels();
  else {
    for (int l = 1; l < L; ++l) {
      if (!(slow_time[l] > slow_time[l - 1])) {
        err << "slow_time not strictly increasing at l=" << l;
        break;
      }
    }
  }
  const std::string msg = err.str();
  if (!msg.empty()) throw DataError("measurement cube: " + msg);
}

}  // namespace sfcw
