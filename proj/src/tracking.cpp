#include "sfcw/tracking.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "sfcw/errors.hpp"

namespace sfcw {
namespace {

struct Pair {
  double dist;
  int a;
  int b;
};

/// Greedy one-to-one assignment of pairs with dist < limit.
std::vector<Pair> greedy_assign(std::vector<Pair> pairs, int na, int nb, double limit) {
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return std::tie(x.dist, x.a, x.b) < std::tie(y.dist, y.a, y.b);
  });
  std::vector<bool> used_a(na, false), used_b(nb, false);
  std::vector<Pair> out;
  for (const auto& p : pairs) {
    if (!(p.dist < limit)) break;
    if (used_a[p.a] || used_b[p.b]) continue;
    used_a[p.a] = used_b[p.b] = true;
    out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<int> update_tracks(std::vector<Track>& tracks, const DetectionSet& detections,
                               double radius, const std::vector<VitalSeries>* series) {
  const auto& dets = detections.detections;
  if (series && series->size() != dets.size()) {
    throw ArgumentError("update_tracks: one vital series per detection expected");
  }
  const int nt = static_cast<int>(tracks.size());
  const int nd = static_cast<int>(dets.size());
  std::vector<Pair> pairs;
  for (int t = 0; t < nt; ++t) {
    for (int d = 0; d < nd; ++d) {
      pairs.push_back({distance(tracks[t].last_location(), dets[d].location), t, d});
    }
  }
  std::vector<int> labels(nd, -1);
  auto append = [&](Track& track, int d) {
    track.segments.push_back(detections.segment_index);
    track.locations.push_back(dets[d].location);
    if (series) {
      track.series.push_back((*series)[d]);
      track.series.back().label = track.label;
    }
    labels[d] = track.label;
  };
  for (const auto& p : greedy_assign(std::move(pairs), nt, nd, radius)) append(tracks[p.a], p.b);

  int next_label = 0;
  for (const auto& t : tracks) next_label = std::max(next_label, t.label + 1);
  for (int d = 0; d < nd; ++d) {
    if (labels[d] >= 0) continue;
    Track t;
    t.label = next_label++;
    tracks.push_back(std::move(t));
    append(tracks.back(), d);
  }
  return labels;
}

EvalReport match_and_score(const std::vector<PolarLocation>& estimates,
                           const std::vector<PolarLocation>& references, double d_match) {
  const int ne = static_cast<int>(estimates.size());
  const int nr = static_cast<int>(references.size());
  std::vector<Pair> pairs;
  for (int e = 0; e < ne; ++e) {
    for (int r = 0; r < nr; ++r) pairs.push_back({distance(estimates[e], references[r]), e, r});
  }
  EvalReport rep;
  rep.P = nr;
  rep.P_hat = ne;
  std::vector<double> errors;
  for (const auto& p : greedy_assign(std::move(pairs), ne, nr, d_match)) {
    rep.matches.push_back({p.a, p.b, p.dist});
    errors.push_back(p.dist);
  }
  const int matched = static_cast<int>(rep.matches.size());
  rep.P_MD = nr - matched;
  rep.P_FD = ne - matched;
  if (nr > 0) rep.tpp = static_cast<double>(nr - rep.P_MD) / nr;
  rep.fdp = static_cast<double>(rep.P_FD) / std::max(1, ne);
  if (!errors.empty()) {
    double sum = 0;
    for (double e : errors) sum += e;
    rep.mean_error = sum / errors.size();
    std::sort(errors.begin(), errors.end());
    const std::size_t h = errors.size() / 2;
    rep.median_error = errors.size() % 2 ? errors[h] : 0.5 * (errors[h - 1] + errors[h]);
  }
  rep.breathing_errors.assign(nr, std::nullopt);
  return rep;
}

double breathing_error(double f_hat, double f_ref) {
  if (!(f_ref > 0)) throw ArgumentError("breathing_error: reference frequency must be positive");
  return (f_hat - f_ref) / f_ref;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os.precision(10);
  os << "ID,obstacle,mean_loc_error,TPP,FDP\n";
  for (const auto& row : rows) {
    os << row.id << ',' << row.obstacle << ',' << row.report.mean_error << ',';
    if (row.report.tpp) os << *row.report.tpp;
    else os << "n/a";
    os << ',' << row.report.fdp << '\n';
  }
  return os.str();
}

}  // namespace sfcw
