#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfcw/localizer.hpp"
#include "sfcw/vitals.hpp"

namespace sfcw {

struct Track {
  int label = 0;
  std::vector<int> segments;
  std::vector<PolarLocation> locations;
  std::vector<VitalSeries> series;
  std::optional<double> breath_freq;

  const PolarLocation& last_location() const { return locations.back(); }
};

/// Greedy nearest-neighbour association by ascending Cartesian distance (ties: lower track,
/// then lower detection index). Pairs at or beyond `radius` never link; each track and
/// detection is used at most once; unmatched detections open new tracks.
/// Returns, per detection, the label it was assigned.
std::vector<int> update_tracks(std::vector<Track>& tracks, const DetectionSet& detections,
                               double radius = 0.25,
                               const std::vector<VitalSeries>* series = nullptr);

struct Match {
  int estimate = 0;
  int reference = 0;
  double error = 0;
};

struct EvalReport {
  int P = 0;
  int P_hat = 0;
  int P_MD = 0;
  int P_FD = 0;
  std::optional<double> tpp;  // undefined when P == 0
  double fdp = 0;
  std::vector<Match> matches;
  double mean_error = 0;
  double median_error = 0;
  std::vector<std::optional<double>> breathing_errors;  // per reference, when available
};

/// One-to-one greedy matching in ascending distance order, pairs closer than d_match only.
EvalReport match_and_score(const std::vector<PolarLocation>& estimates,
                           const std::vector<PolarLocation>& references, double d_match = 0.3);

/// (f_hat - f_ref) / f_ref.
double breathing_error(double f_hat, double f_ref);

struct ReportRow {
  std::string id;
  std::string obstacle;
  EvalReport report;
};

/// Columns ID,obstacle,mean_loc_error,TPP,FDP; an undefined TPP is written as n/a.
std::string report_csv(const std::vector<ReportRow>& rows);

}  // namespace sfcw
