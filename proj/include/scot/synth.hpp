#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scot/matching.hpp"
#include "scot/series.hpp"

namespace scot {

struct ScenarioSpec {
  int n_initial_buildings = 4;
  int n_frames = 5;
  double construction_rate = 0.0;  // expected new buildings per frame
  double occlusion_rate = 0.0;     // probability a building is masked out of a frame
  double grid_extent = 1024.0;     // scene size in pixels
  double min_separation = 4.0;     // minimum gap between buildings in pixels
  std::uint64_t seed = 0;
};

struct Scenario {
  TimeSeries series;                         // ground truth
  std::map<std::string, int> first_visible;  // id -> frame of first appearance
};

// Packs axis-aligned rectangular buildings into the scene and evolves
// them over monthly frames: buildings persist once constructed, except
// in frames where they are occluded (the frame then carries a covering
// region in its udm list instead). Deterministic given the spec.
// Throws InfeasiblePacking when a building cannot be placed.
Scenario gen_scenario(const ScenarioSpec& spec);

struct PerturbationSpec {
  double jitter_px = 0.0;      // per-vertex displacement scale
  double drop_rate = 0.0;      // probability a footprint is omitted
  double spurious_rate = 0.0;  // expected false footprints per frame
  double id_swap_rate = 0.0;   // probability a tracked id is re-assigned
  int delay_frames = 0;        // detection latency for new buildings
  std::uint64_t seed = 0;
};

struct IdSwapEvent {
  int frame = 0;
  std::string gt_id;
  std::string old_prop_id;
  std::string new_prop_id;
};

struct Perturbed {
  TimeSeries series;                 // proposals
  std::vector<IdSwapEvent> id_swaps; // each re-assignment of a tracked id
};

// Derives a proposal series from ground truth under a controllable
// noise model. Id swaps are persistent (the new id is kept afterwards)
// and only applied to buildings that already appeared in an earlier
// proposal frame, so each recorded event costs exactly one mismatch
// when nothing else interferes. Deterministic given the spec.
Perturbed perturb(const TimeSeries& gt, const PerturbationSpec& spec);

// Exhaustive reference matcher with the same contract as match_frame:
// maximum cardinality, then maximum IOU sum, then lexicographically
// smallest pair list. Throws TooLarge when min(|gt|, |props|) > 10.
MatchResult brute_force_match(std::span<const ValidatedPolygon> gt,
                              std::span<const ValidatedPolygon> props,
                              double threshold);

}  // namespace scot
