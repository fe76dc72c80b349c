#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scot/geometry.hpp"
#include "scot/series.hpp"

namespace scot {

struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // row-major, nonzero = foreground

  bool foreground(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height &&
           data[static_cast<std::size_t>(y) * width + x] != 0;
  }
};

// Traces one polygon per 8-connected foreground component along pixel
// boundaries, in pixel units with y pointing down. Interior holes are
// filled; diagonal-only pinch points are bridged with a deterministic
// extra pixel so every traced ring is simple. Components whose final
// polygon area is below min_area are dropped.
std::vector<ValidatedPolygon> polygonize_mask(const BinaryMask& mask,
                                              double min_area);

// Inverse of polygonize_mask up to hole filling and pinch bridging: a
// pixel is foreground when its center lies inside any polygon
// (even-odd rule). Pixels outside [0, width) x [0, height) are clipped.
BinaryMask rasterize_polygons(std::span<const ValidatedPolygon> polygons,
                              int width, int height);

// Baseline identifier propagation: frame 0 footprints get ids "0".."n-1"
// in input order; each later frame is matched against the footprints of
// the immediately previous frame, matched polygons inherit the
// predecessor's id and unmatched ones draw fresh ids from a global
// counter. lookback > 1 widens matching to ids last seen within that
// many frames (off the baseline path; default keeps the strict rule).
// labels, when given, must have one entry per frame; otherwise
// zero-padded frame indices are used.
TimeSeries propagate_ids(const std::vector<std::vector<ValidatedPolygon>>& frames,
                         double threshold, int lookback = 1,
                         std::vector<std::string> labels = {});

}  // namespace scot
