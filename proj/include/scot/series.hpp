#pragma once

#include <string>
#include <vector>

#include "scot/geometry.hpp"

namespace scot {

/// One building outline at one timestep, tagged with the persistent
/// identifier that lets it be tracked across frames. Ids are opaque
/// strings; they only ever get compared for equality.
struct Footprint {
  std::string id;
  ValidatedPolygon geometry;
};

/// All footprints of one AOI at one timestep, plus any unusable-data
/// masks (cloud cover etc.) attached to that timestep.
struct Frame {
  std::string timestep_label;  // sortable token, canonically YYYY_MM
  std::vector<Footprint> footprints;
  std::vector<ValidatedPolygon> udm;
};

/// Ordered frames of one AOI. Frames are sorted by timestep label and
/// labels are unique; gaps in the cadence are fine.
struct TimeSeries {
  std::string aoi_id;
  std::vector<Frame> frames;
};

inline std::size_t total_footprints(const TimeSeries& series) {
  std::size_t n = 0;
  for (const Frame& frame : series.frames) {
    n += frame.footprints.size();
  }
  return n;
}

}  // namespace scot
