#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scot/geometry.hpp"
#include "scot/rng.hpp"
#include "scot/series.hpp"

namespace scot::testutil {

inline ValidatedPolygon random_rect(Rng& rng, double extent, double min_side,
                                    double max_side) {
  double w = rng.uniform(min_side, max_side);
  double h = rng.uniform(min_side, max_side);
  double x = rng.uniform(0.0, extent - w);
  double y = rng.uniform(0.0, extent - h);
  return make_rect(x, y, w, h);
}

// up to max_count rectangles crammed into a small extent so overlaps
// (and therefore matching conflicts) are common
inline std::vector<ValidatedPolygon> random_frame(Rng& rng, int max_count,
                                                  double extent,
                                                  double max_side) {
  int n = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_count) + 1));
  std::vector<ValidatedPolygon> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    out.push_back(random_rect(rng, extent, 1.0, max_side));
  }
  return out;
}

inline Frame make_frame(std::string label,
                        std::vector<std::pair<std::string, ValidatedPolygon>>
                            footprints,
                        std::vector<ValidatedPolygon> udm = {}) {
  Frame frame;
  frame.timestep_label = std::move(label);
  for (auto& [id, poly] : footprints) {
    frame.footprints.push_back(Footprint{std::move(id), std::move(poly)});
  }
  frame.udm = std::move(udm);
  return frame;
}

inline TimeSeries make_series(std::string aoi_id, std::vector<Frame> frames) {
  TimeSeries series;
  series.aoi_id = std::move(aoi_id);
  series.frames = std::move(frames);
  return series;
}

}  // namespace scot::testutil
