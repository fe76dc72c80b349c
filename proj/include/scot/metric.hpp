#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "scot/matching.hpp"
#include "scot/series.hpp"

namespace scot {

struct MatchCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t mm = 0;
  std::int64_t tp_new = 0;
  std::int64_t fp_new = 0;
  std::int64_t fn_new = 0;

  MatchCounts& operator+=(const MatchCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    mm += o.mm;
    tp_new += o.tp_new;
    fp_new += o.fp_new;
    fn_new += o.fn_new;
    return *this;
  }
  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

struct ScotConfig {
  double beta = 2.0;
  double iou_threshold = 0.25;
  double min_area = 4.0;
};

// Pairing of a ground-truth frame with the proposal frame carrying the
// same timestep label. prop_frame is -1 when the proposals have no
// frame for that label; such frames are scored against an empty set.
struct AlignedFrame {
  int gt_frame = 0;
  int prop_frame = -1;
};

// Throws MisalignedSeries if the proposals contain a timestep label the
// ground truth lacks. Returns one entry per ground-truth frame, in order.
std::vector<AlignedFrame> align_frames(const TimeSeries& gt,
                                       const TimeSeries& props);

struct TrackResult {
  std::vector<AlignedFrame> alignment;
  std::vector<MatchResult> matches;  // parallel to alignment
  MatchCounts counts;                // tp / fp / fn / mm only
};

// Runs per-frame matching in timestep order and applies the identifier
// continuity rule: a match is a mismatch when either id was most
// recently paired with a different partner id. The pairing memory is
// updated on every match and survives frames where an id is absent.
TrackResult track_bookkeeping(const TimeSeries& gt, const TimeSeries& props,
                              const ScotConfig& cfg);

// Counts only footprints whose id makes its first chronological
// appearance in its own series, excluding each series' earliest frame.
// Matched new-new pairs are tp_new; a new footprint whose partner is
// not new (or missing) falls back to fn_new / fp_new. Returns counts
// with only the *_new fields populated.
MatchCounts change_bookkeeping(const TimeSeries& gt, const TimeSeries& props,
                               const TrackResult& track);

// Scalar scores. F-style scores define an empty denominator as a
// vacuous 1.0; combine(0, 0) is 0.
double f_track(const MatchCounts& counts);
double f_change(const MatchCounts& counts);
double legacy_f1(const MatchCounts& counts);
double combine(double f_track, double f_change, double beta);

// Classic tracking accuracy, reported for comparison. Unbounded below.
// Throws ZeroGroundTruth when total_gt is not positive.
double mota(const MatchCounts& counts, std::int64_t total_gt);

struct AoiScores {
  std::string aoi_id;
  MatchCounts counts;
  std::int64_t total_gt = 0;
  double f1 = 0.0;
  double f_track = 0.0;
  double f_change = 0.0;
  double f_scot = 0.0;
  double mota = std::numeric_limits<double>::quiet_NaN();  // NaN if total_gt == 0
};

struct ScoreStats {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double stddev = std::numeric_limits<double>::quiet_NaN();
};

struct DatasetStats {
  ScoreStats f1;
  ScoreStats f_track;
  ScoreStats f_change;
  ScoreStats f_scot;
  ScoreStats mota;  // aggregated over AOIs where mota is defined
};

struct ScoreReport {
  ScotConfig config;
  std::vector<AoiScores> per_aoi;  // sorted by aoi_id
  DatasetStats dataset;
};

AoiScores score_aoi(const TimeSeries& gt, const TimeSeries& props,
                    const ScotConfig& cfg);

// Mean and population standard deviation of each score across AOIs.
// Throws EmptyDataset when no AOI pairs are given.
ScoreReport score_dataset(
    const std::vector<std::pair<TimeSeries, TimeSeries>>& aois,
    const ScotConfig& cfg);

}  // namespace scot
