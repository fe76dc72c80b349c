#pragma once

#include <span>
#include <vector>

#include "scot/geometry.hpp"

namespace scot {

/// An eligible ground-truth/proposal pairing within one frame.
struct CandidatePair {
  int gt_index = -1;
  int prop_index = -1;
  double iou = 0.0;
};

struct MatchedPair {
  int gt_index = -1;
  int prop_index = -1;
  double iou = 0.0;
};

/// The per-frame optimal assignment. Pairs are sorted by
/// (gt_index, prop_index); the unmatched lists are sorted ascending and
/// together with the pairs partition both input sets.
struct MatchResult {
  std::vector<MatchedPair> pairs;
  std::vector<int> unmatched_gt;
  std::vector<int> unmatched_prop;

  double iou_sum() const {
    double s = 0.0;
    for (const MatchedPair& p : pairs) s += p.iou;
    return s;
  }
};

/// Two matchings whose IOU sums differ by no more than this are treated
/// as tied and ordered lexicographically by pair indices. Shared with
/// the brute-force oracle so both sides break ties identically.
inline constexpr double kIouSumTolerance = 1e-9;

/// All pairs with iou >= threshold, sorted by (gt_index, prop_index).
/// Uses a uniform spatial grid over bounding boxes, so only
/// box-overlapping pairs are ever clipped.
std::vector<CandidatePair> candidate_pairs(
    std::span<const ValidatedPolygon> gt, std::span<const ValidatedPolygon> props,
    double threshold);

/// Optimal one-to-one matching: maximum number of pairs first, largest
/// IOU sum among those, remaining ties broken by lowest
/// (gt_index, prop_index) lexicographic order. Exact, not greedy.
MatchResult match_frame(std::span<const ValidatedPolygon> gt,
                        std::span<const ValidatedPolygon> props,
                        double threshold);

/// Same selection rule applied to a precomputed candidate list. Lets
/// callers that already hold pair IOUs (the brute-force oracle, the
/// bookkeeping layer) share one implementation.
MatchResult match_candidates(int gt_count, int prop_count,
                             std::span<const CandidatePair> candidates);

}  // namespace scot
