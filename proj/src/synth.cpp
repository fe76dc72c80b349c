#include "scot/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "scot/errors.hpp"
#include "scot/rng.hpp"

namespace scot {
namespace {

constexpr double kMinSide = 8.0;
constexpr double kMaxSide = 24.0;
constexpr int kPlacementAttempts = 1000;
constexpr int kJitterAttempts = 20;

struct Rect {
  double x = 0, y = 0, w = 0, h = 0;
};

bool separated(const Rect& a, const Rect& b, double gap) {
  return a.x >= b.x + b.w + gap || b.x >= a.x + a.w + gap ||
         a.y >= b.y + b.h + gap || b.y >= a.y + a.h + gap;
}

std::string frame_label(int t) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d_%02d", 2018 + t / 12, 1 + t % 12);
  return buf;
}

void check_rate(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

Rect place_building(Rng& rng, const std::vector<Rect>& placed, double extent,
                    double min_separation) {
  const double side_hi = std::min(kMaxSide, extent);
  if (side_hi < kMinSide) {
    throw InfeasiblePacking("grid extent " + std::to_string(extent) +
                            " cannot hold any building");
  }
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    Rect r;
    r.w = rng.uniform(kMinSide, side_hi);
    r.h = rng.uniform(kMinSide, side_hi);
    r.x = rng.uniform(0.0, extent - r.w);
    r.y = rng.uniform(0.0, extent - r.h);
    bool ok = true;
    for (const Rect& other : placed) {
      if (!separated(r, other, min_separation)) {
        ok = false;
        break;
      }
    }
    if (ok) return r;
  }
  throw InfeasiblePacking("no room for building " +
                          std::to_string(placed.size()) + " after " +
                          std::to_string(kPlacementAttempts) + " attempts");
}

}  // namespace

Scenario gen_scenario(const ScenarioSpec& spec) {
  if (spec.n_initial_buildings < 0) {
    throw std::invalid_argument("n_initial_buildings must be non-negative");
  }
  if (spec.n_frames < 2) {
    throw std::invalid_argument("n_frames must be at least 2");
  }
  check_rate(spec.construction_rate, "construction_rate");
  check_rate(spec.occlusion_rate, "occlusion_rate");
  if (!(spec.grid_extent > 0.0)) {
    throw std::invalid_argument("grid_extent must be positive");
  }
  if (spec.min_separation < 0.0) {
    throw std::invalid_argument("min_separation must be non-negative");
  }

  Rng rng(spec.seed);

  struct Building {
    std::string id;
    Rect rect;
    int constructed_at;
  };
  std::vector<Building> buildings;
  std::vector<Rect> placed;
  auto add_building = [&](int frame) {
    Rect r = place_building(rng, placed, spec.grid_extent, spec.min_separation);
    placed.push_back(r);
    buildings.push_back(
        Building{"b" + std::to_string(buildings.size()), r, frame});
  };

  for (int i = 0; i < spec.n_initial_buildings; ++i) add_building(0);
  std::vector<int> constructions(spec.n_frames, 0);
  for (int t = 1; t < spec.n_frames; ++t) {
    constructions[t] = rng.poisson(spec.construction_rate);
  }
  for (int t = 1; t < spec.n_frames; ++t) {
    for (int k = 0; k < constructions[t]; ++k) add_building(t);
  }

  Scenario scenario;
  scenario.series.aoi_id = "aoi_" + std::to_string(spec.seed);
  for (int t = 0; t < spec.n_frames; ++t) {
    Frame frame;
    frame.timestep_label = frame_label(t);
    for (const Building& b : buildings) {
      if (b.constructed_at > t) continue;
      if (rng.bernoulli(spec.occlusion_rate)) {
        frame.udm.push_back(
            make_rect(b.rect.x - 1.0, b.rect.y - 1.0, b.rect.w + 2.0,
                      b.rect.h + 2.0));
        continue;
      }
      frame.footprints.push_back(
          Footprint{b.id, make_rect(b.rect.x, b.rect.y, b.rect.w, b.rect.h)});
    }
    scenario.series.frames.push_back(std::move(frame));
  }

  for (int t = 0; t < spec.n_frames; ++t) {
    for (const Footprint& f : scenario.series.frames[t].footprints) {
      scenario.first_visible.try_emplace(f.id, t);
    }
  }
  return scenario;
}

namespace {

// jitters every vertex independently; halves the scale until the result
// is a valid polygon, falling back to the original geometry
ValidatedPolygon jitter_polygon(Rng& rng, const ValidatedPolygon& original,
                                double jitter) {
  if (jitter <= 0.0) return original;
  double scale = jitter;
  for (int attempt = 0; attempt < kJitterAttempts; ++attempt) {
    Polygon candidate;
    for (const Point& p : original.exterior()) {
      candidate.exterior.push_back(Point{p.x + rng.uniform(-scale, scale),
                                         p.y + rng.uniform(-scale, scale)});
    }
    for (const auto& hole : original.holes()) {
      std::vector<Point> jittered;
      for (const Point& p : hole) {
        jittered.push_back(Point{p.x + rng.uniform(-scale, scale),
                                 p.y + rng.uniform(-scale, scale)});
      }
      candidate.holes.push_back(std::move(jittered));
    }
    try {
      return validate(candidate);
    } catch (const Error&) {
      scale *= 0.5;
    }
  }
  return original;
}

}  // namespace

Perturbed perturb(const TimeSeries& gt, const PerturbationSpec& spec) {
  if (spec.jitter_px < 0.0) {
    throw std::invalid_argument("jitter_px must be non-negative");
  }
  check_rate(spec.drop_rate, "drop_rate");
  check_rate(spec.id_swap_rate, "id_swap_rate");
  if (spec.spurious_rate < 0.0) {
    throw std::invalid_argument("spurious_rate must be non-negative");
  }
  if (spec.delay_frames < 0) {
    throw std::invalid_argument("delay_frames must be non-negative");
  }

  Rng rng(spec.seed);

  std::unordered_map<std::string, int> first_visible;
  double extent = 32.0;
  for (int t = 0; t < static_cast<int>(gt.frames.size()); ++t) {
    for (const Footprint& f : gt.frames[t].footprints) {
      first_visible.try_emplace(f.id, t);
      extent = std::max({extent, f.geometry.bbox().max_x,
                         f.geometry.bbox().max_y});
    }
  }

  Perturbed out;
  out.series.aoi_id = gt.aoi_id;

  std::unordered_map<std::string, std::string> prop_id_of;
  std::unordered_set<std::string> emitted_before;
  long long counter = 0;
  auto fresh_id = [&]() { return "p" + std::to_string(counter++); };

  for (int t = 0; t < static_cast<int>(gt.frames.size()); ++t) {
    const Frame& gf = gt.frames[t];
    Frame pf;
    pf.timestep_label = gf.timestep_label;
    std::vector<std::string> emitted_now;

    for (const Footprint& f : gf.footprints) {
      int first = first_visible.at(f.id);
      if (first > 0 && t < first + spec.delay_frames) continue;
      if (rng.bernoulli(spec.drop_rate)) continue;

      auto it = prop_id_of.find(f.id);
      if (it == prop_id_of.end()) {
        it = prop_id_of.emplace(f.id, fresh_id()).first;
      } else if (emitted_before.count(f.id) &&
                 rng.bernoulli(spec.id_swap_rate)) {
        std::string replacement = fresh_id();
        out.id_swaps.push_back(IdSwapEvent{t, f.id, it->second, replacement});
        it->second = replacement;
      }

      pf.footprints.push_back(
          Footprint{it->second, jitter_polygon(rng, f.geometry, spec.jitter_px)});
      emitted_now.push_back(f.id);
    }

    int n_spurious = spec.spurious_rate > 0.0 ? rng.poisson(spec.spurious_rate) : 0;
    for (int k = 0; k < n_spurious; ++k) {
      double w = rng.uniform(kMinSide, kMaxSide);
      double h = rng.uniform(kMinSide, kMaxSide);
      double x = rng.uniform(0.0, std::max(extent - w, 1.0));
      double y = rng.uniform(0.0, std::max(extent - h, 1.0));
      pf.footprints.push_back(Footprint{fresh_id(), make_rect(x, y, w, h)});
    }

    for (const std::string& id : emitted_now) emitted_before.insert(id);
    out.series.frames.push_back(std::move(pf));
  }
  return out;
}

namespace {

struct OracleState {
  int left_count = 0;
  bool left_is_gt = true;
  const std::vector<std::vector<std::pair<int, double>>>* adj = nullptr;
  std::vector<bool> used_right;
  std::vector<std::pair<int, int>> current;  // (left, right)
  double current_sum = 0.0;

  int best_card = -1;
  double best_sum = 0.0;
  std::vector<MatchedPair> best_pairs;

  void finalize() {
    std::vector<MatchedPair> pairs;
    pairs.reserve(current.size());
    for (auto [l, r] : current) {
      int gi = left_is_gt ? l : r;
      int pj = left_is_gt ? r : l;
      double v = 0.0;
      for (const auto& [rr, iou] : (*adj)[l]) {
        if (rr == r) {
          v = iou;
          break;
        }
      }
      pairs.push_back(MatchedPair{gi, pj, v});
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
      return std::pair{a.gt_index, a.prop_index} <
             std::pair{b.gt_index, b.prop_index};
    });
    double sum = 0.0;
    for (const MatchedPair& p : pairs) sum += p.iou;

    const int card = static_cast<int>(pairs.size());
    bool better = false;
    if (card > best_card) {
      better = true;
    } else if (card == best_card) {
      if (sum - best_sum > kIouSumTolerance) {
        better = true;
      } else if (sum - best_sum >= -kIouSumTolerance) {
        auto cmp = [](const MatchedPair& a, const MatchedPair& b) {
          return std::pair{a.gt_index, a.prop_index} <
                 std::pair{b.gt_index, b.prop_index};
        };
        better = std::lexicographical_compare(pairs.begin(), pairs.end(),
                                              best_pairs.begin(),
                                              best_pairs.end(), cmp);
      }
    }
    if (better) {
      best_card = card;
      best_sum = sum;
      best_pairs = pairs;
    }
  }

  void recurse(int pos) {
    if (static_cast<int>(current.size()) + (left_count - pos) < best_card) {
      return;  // cannot reach the best cardinality any more
    }
    if (pos == left_count) {
      finalize();
      return;
    }
    recurse(pos + 1);  // leave this one unmatched
    for (const auto& [r, iou] : (*adj)[pos]) {
      if (used_right[r]) continue;
      used_right[r] = true;
      current.push_back({pos, r});
      current_sum += iou;
      recurse(pos + 1);
      current_sum -= iou;
      current.pop_back();
      used_right[r] = false;
    }
  }
};

}  // namespace

MatchResult brute_force_match(std::span<const ValidatedPolygon> gt,
                              std::span<const ValidatedPolygon> props,
                              double threshold) {
  const int n = static_cast<int>(gt.size());
  const int m = static_cast<int>(props.size());
  if (std::min(n, m) > 10) {
    throw TooLarge("exhaustive matching supports at most 10 on the smaller "
                   "side, got " +
                   std::to_string(n) + " x " + std::to_string(m));
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("iou threshold must lie in (0, 1)");
  }

  OracleState state;
  state.left_is_gt = n <= m;
  state.left_count = state.left_is_gt ? n : m;
  const int right_count = state.left_is_gt ? m : n;

  std::vector<std::vector<std::pair<int, double>>> adj(state.left_count);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      double v = iou(gt[i], props[j]);
      if (v >= threshold) {
        if (state.left_is_gt) {
          adj[i].push_back({j, v});
        } else {
          adj[j].push_back({i, v});
        }
      }
    }
  }
  state.adj = &adj;
  state.used_right.assign(right_count, false);
  state.recurse(0);

  MatchResult result;
  result.pairs = std::move(state.best_pairs);
  std::vector<bool> gt_used(n, false), prop_used(m, false);
  for (const MatchedPair& p : result.pairs) {
    gt_used[p.gt_index] = true;
    prop_used[p.prop_index] = true;
  }
  for (int i = 0; i < n; ++i) {
    if (!gt_used[i]) result.unmatched_gt.push_back(i);
  }
  for (int j = 0; j < m; ++j) {
    if (!prop_used[j]) result.unmatched_prop.push_back(j);
  }
  return result;
}

}  // namespace scot
