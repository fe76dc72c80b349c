#include "scot/metric.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "scot/errors.hpp"

namespace scot {
namespace {

std::vector<ValidatedPolygon> frame_polygons(const Frame& frame) {
  std::vector<ValidatedPolygon> polys;
  polys.reserve(frame.footprints.size());
  for (const Footprint& f : frame.footprints) polys.push_back(f.geometry);
  return polys;
}

// first frame index at which each id occurs, walking frames in order
std::unordered_map<std::string, int> first_appearance(const TimeSeries& series) {
  std::unordered_map<std::string, int> first;
  for (int i = 0; i < static_cast<int>(series.frames.size()); ++i) {
    for (const Footprint& f : series.frames[i].footprints) {
      first.try_emplace(f.id, i);
    }
  }
  return first;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

ScoreStats stats_of(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  ScoreStats st;
  st.mean = mean_of(xs);
  double sq = 0.0;
  for (double x : xs) sq += (x - st.mean) * (x - st.mean);
  st.stddev = std::sqrt(sq / static_cast<double>(xs.size()));
  return st;
}

}  // namespace

std::vector<AlignedFrame> align_frames(const TimeSeries& gt,
                                       const TimeSeries& props) {
  std::unordered_map<std::string, int> gt_index;
  for (int i = 0; i < static_cast<int>(gt.frames.size()); ++i) {
    gt_index.emplace(gt.frames[i].timestep_label, i);
  }
  std::unordered_map<std::string, int> prop_index;
  for (int j = 0; j < static_cast<int>(props.frames.size()); ++j) {
    const std::string& label = props.frames[j].timestep_label;
    if (!gt_index.count(label)) {
      throw MisalignedSeries("proposal frame '" + label +
                             "' has no ground-truth counterpart in AOI '" +
                             gt.aoi_id + "'");
    }
    prop_index.emplace(label, j);
  }

  std::vector<AlignedFrame> aligned;
  aligned.reserve(gt.frames.size());
  for (int i = 0; i < static_cast<int>(gt.frames.size()); ++i) {
    auto it = prop_index.find(gt.frames[i].timestep_label);
    aligned.push_back({i, it == prop_index.end() ? -1 : it->second});
  }
  return aligned;
}

TrackResult track_bookkeeping(const TimeSeries& gt, const TimeSeries& props,
                              const ScotConfig& cfg) {
  TrackResult result;
  result.alignment = align_frames(gt, props);

  static const Frame kEmptyFrame{};
  std::unordered_map<std::string, std::string> last_prop_for_gt;
  std::unordered_map<std::string, std::string> last_gt_for_prop;

  for (const AlignedFrame& af : result.alignment) {
    const Frame& gf = gt.frames[af.gt_frame];
    const Frame& pf =
        af.prop_frame >= 0 ? props.frames[af.prop_frame] : kEmptyFrame;

    MatchResult mr = match_frame(frame_polygons(gf), frame_polygons(pf),
                                 cfg.iou_threshold);
    result.counts.tp += static_cast<std::int64_t>(mr.pairs.size());
    result.counts.fn += static_cast<std::int64_t>(mr.unmatched_gt.size());
    result.counts.fp += static_cast<std::int64_t>(mr.unmatched_prop.size());

    for (const MatchedPair& pair : mr.pairs) {
      const std::string& gid = gf.footprints[pair.gt_index].id;
      const std::string& pid = pf.footprints[pair.prop_index].id;
      auto ig = last_prop_for_gt.find(gid);
      auto ip = last_gt_for_prop.find(pid);
      bool mismatch = (ig != last_prop_for_gt.end() && ig->second != pid) ||
                      (ip != last_gt_for_prop.end() && ip->second != gid);
      if (mismatch) ++result.counts.mm;
      last_prop_for_gt[gid] = pid;
      last_gt_for_prop[pid] = gid;
    }
    result.matches.push_back(std::move(mr));
  }
  return result;
}

MatchCounts change_bookkeeping(const TimeSeries& gt, const TimeSeries& props,
                               const TrackResult& track) {
  const auto first_gt = first_appearance(gt);
  const auto first_prop = first_appearance(props);

  auto gt_is_new = [&](int frame, const std::string& id) {
    return frame != 0 && first_gt.at(id) == frame;
  };
  auto prop_is_new = [&](int frame, const std::string& id) {
    return frame != 0 && first_prop.at(id) == frame;
  };

  MatchCounts counts;
  for (std::size_t k = 0; k < track.alignment.size(); ++k) {
    const AlignedFrame& af = track.alignment[k];
    const MatchResult& mr = track.matches[k];
    const Frame& gf = gt.frames[af.gt_frame];

    for (const MatchedPair& pair : mr.pairs) {
      const Frame& pf = props.frames[af.prop_frame];
      bool g_new = gt_is_new(af.gt_frame, gf.footprints[pair.gt_index].id);
      bool p_new = prop_is_new(af.prop_frame, pf.footprints[pair.prop_index].id);
      if (g_new && p_new) {
        ++counts.tp_new;
      } else if (g_new) {
        ++counts.fn_new;  // the non-new proposal partner is dropped
      } else if (p_new) {
        ++counts.fp_new;  // the non-new gt partner is dropped
      }
    }
    for (int gi : mr.unmatched_gt) {
      if (gt_is_new(af.gt_frame, gf.footprints[gi].id)) ++counts.fn_new;
    }
    if (af.prop_frame >= 0) {
      const Frame& pf = props.frames[af.prop_frame];
      for (int pj : mr.unmatched_prop) {
        if (prop_is_new(af.prop_frame, pf.footprints[pj].id)) ++counts.fp_new;
      }
    }
  }
  return counts;
}

double f_track(const MatchCounts& c) {
  const double denom =
      static_cast<double>(c.tp) + 0.5 * static_cast<double>(c.fp + c.fn);
  if (denom == 0.0) return 1.0;
  return static_cast<double>(c.tp - c.mm) / denom;
}

double f_change(const MatchCounts& c) {
  const double denom = static_cast<double>(c.tp_new) +
                       0.5 * static_cast<double>(c.fp_new + c.fn_new);
  if (denom == 0.0) return 1.0;
  return static_cast<double>(c.tp_new) / denom;
}

double legacy_f1(const MatchCounts& c) {
  const double denom =
      static_cast<double>(c.tp) + 0.5 * static_cast<double>(c.fp + c.fn);
  if (denom == 0.0) return 1.0;
  return static_cast<double>(c.tp) / denom;
}

double combine(double f_track, double f_change, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * f_change + f_track;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * f_change * f_track / denom;
}

double mota(const MatchCounts& c, std::int64_t total_gt) {
  if (total_gt <= 0) {
    throw ZeroGroundTruth("MOTA is undefined without ground-truth footprints");
  }
  return 1.0 - static_cast<double>(c.fn + c.fp + c.mm) /
                   static_cast<double>(total_gt);
}

AoiScores score_aoi(const TimeSeries& gt, const TimeSeries& props,
                    const ScotConfig& cfg) {
  TrackResult track = track_bookkeeping(gt, props, cfg);
  MatchCounts change = change_bookkeeping(gt, props, track);

  AoiScores scores;
  scores.aoi_id = gt.aoi_id;
  scores.counts = track.counts;
  scores.counts.tp_new = change.tp_new;
  scores.counts.fp_new = change.fp_new;
  scores.counts.fn_new = change.fn_new;
  scores.total_gt = static_cast<std::int64_t>(total_footprints(gt));

  scores.f1 = legacy_f1(scores.counts);
  scores.f_track = f_track(scores.counts);
  scores.f_change = f_change(scores.counts);
  scores.f_scot = combine(scores.f_track, scores.f_change, cfg.beta);
  if (scores.total_gt > 0) {
    scores.mota = mota(scores.counts, scores.total_gt);
  }
  return scores;
}

ScoreReport score_dataset(
    const std::vector<std::pair<TimeSeries, TimeSeries>>& aois,
    const ScotConfig& cfg) {
  if (aois.empty()) {
    throw EmptyDataset("no AOIs to score");
  }

  ScoreReport report;
  report.config = cfg;
  for (const auto& [gt, props] : aois) {
    report.per_aoi.push_back(score_aoi(gt, props, cfg));
  }
  std::sort(report.per_aoi.begin(), report.per_aoi.end(),
            [](const AoiScores& a, const AoiScores& b) {
              return a.aoi_id < b.aoi_id;
            });

  std::vector<double> f1s, tracks, changes, scots, motas;
  for (const AoiScores& s : report.per_aoi) {
    f1s.push_back(s.f1);
    tracks.push_back(s.f_track);
    changes.push_back(s.f_change);
    scots.push_back(s.f_scot);
    if (!std::isnan(s.mota)) motas.push_back(s.mota);
  }
  report.dataset.f1 = stats_of(f1s);
  report.dataset.f_track = stats_of(tracks);
  report.dataset.f_change = stats_of(changes);
  report.dataset.f_scot = stats_of(scots);
  report.dataset.mota = stats_of(motas);
  return report;
}

}  // namespace scot
