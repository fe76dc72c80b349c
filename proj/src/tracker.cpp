#include "scot/tracker.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "scot/matching.hpp"

namespace scot {
namespace {

using Cell = std::pair<int, int>;  // (x, y)

// Fills the top background pixel of every 2x2 block whose foreground
// pixels sit only on a diagonal, repeating until no block qualifies.
// Afterwards every lattice vertex touches 0 or 2 boundary edges, so
// boundary tracing yields simple rings.
void fill_pinches(std::vector<std::uint8_t>& grid, int w, int h) {
  auto at = [&](int x, int y) -> std::uint8_t& {
    return grid[static_cast<std::size_t>(y) * w + x];
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int y = 0; y + 1 < h; ++y) {
      for (int x = 0; x + 1 < w; ++x) {
        bool tl = at(x, y) != 0, tr = at(x + 1, y) != 0;
        bool bl = at(x, y + 1) != 0, br = at(x + 1, y + 1) != 0;
        if (tl && br && !tr && !bl) {
          at(x + 1, y) = 1;
          changed = true;
        } else if (tr && bl && !tl && !br) {
          at(x, y) = 1;
          changed = true;
        }
      }
    }
  }
}

// 8-connected component labels in row-major discovery order; -1 = background.
std::vector<int> label_components(const std::vector<std::uint8_t>& grid, int w,
                                  int h, int& n_components) {
  std::vector<int> label(grid.size(), -1);
  n_components = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (grid[idx] == 0 || label[idx] != -1) continue;
      int comp = n_components++;
      std::queue<Cell> queue;
      queue.push({x, y});
      label[idx] = comp;
      while (!queue.empty()) {
        auto [cx, cy] = queue.front();
        queue.pop();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
            if (grid[nidx] == 0 || label[nidx] != -1) continue;
            label[nidx] = comp;
            queue.push({nx, ny});
          }
        }
      }
    }
  }
  return label;
}

double shoelace(const std::vector<Point>& ring) {
  double s = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % ring.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

std::vector<Point> drop_collinear(const std::vector<Point>& ring) {
  std::vector<Point> out;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& prev = ring[(i + n - 1) % n];
    const Point& cur = ring[i];
    const Point& next = ring[(i + 1) % n];
    double cross = (cur.x - prev.x) * (next.y - cur.y) -
                   (cur.y - prev.y) * (next.x - cur.x);
    if (cross != 0.0) out.push_back(cur);
  }
  return out;
}

}  // namespace

std::vector<ValidatedPolygon> polygonize_mask(const BinaryMask& mask,
                                              double min_area) {
  if (mask.width <= 0 || mask.height <= 0 ||
      mask.data.size() !=
          static_cast<std::size_t>(mask.width) * mask.height) {
    throw std::invalid_argument("mask dimensions do not match its data");
  }

  std::vector<std::uint8_t> grid = mask.data;
  for (std::uint8_t& v : grid) v = v ? 1 : 0;
  const int w = mask.width, h = mask.height;
  fill_pinches(grid, w, h);

  int n_components = 0;
  std::vector<int> label = label_components(grid, w, h, n_components);
  if (n_components == 0) return {};

  auto fg = [&](int x, int y) {
    return x >= 0 && x < w && y >= 0 && y < h &&
           grid[static_cast<std::size_t>(y) * w + x] != 0;
  };

  // Directed boundary edges per component, keyed by start vertex. The
  // direction keeps foreground on the left in image coordinates, which
  // makes the outer ring's shoelace area positive and hole rings negative.
  std::vector<std::map<Cell, Cell>> next_vertex(n_components);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (grid[idx] == 0) continue;
      auto& next = next_vertex[label[idx]];
      if (!fg(x, y - 1)) next[{x, y}] = {x + 1, y};          // top
      if (!fg(x + 1, y)) next[{x + 1, y}] = {x + 1, y + 1};  // right
      if (!fg(x, y + 1)) next[{x + 1, y + 1}] = {x, y + 1};  // bottom
      if (!fg(x - 1, y)) next[{x, y + 1}] = {x, y};          // left
    }
  }

  std::vector<ValidatedPolygon> polygons;
  for (int comp = 0; comp < n_components; ++comp) {
    auto& next = next_vertex[comp];
    std::vector<Point> best_ring;
    double best_area = 0.0;
    std::unordered_set<long long> visited;
    auto key = [](Cell c) {
      return (static_cast<long long>(c.first) << 32) ^
             (static_cast<long long>(c.second) & 0xffffffffLL);
    };

    for (const auto& [start, first_next] : next) {
      (void)first_next;
      if (visited.count(key(start))) continue;
      std::vector<Point> ring;
      Cell cur = start;
      do {
        visited.insert(key(cur));
        ring.push_back(Point{static_cast<double>(cur.first),
                             static_cast<double>(cur.second)});
        cur = next.at(cur);
      } while (cur != start);
      double area = shoelace(ring);
      if (area > best_area) {
        best_area = area;
        best_ring = std::move(ring);
      }
    }

    assert(!best_ring.empty());
    Polygon poly;
    poly.exterior = drop_collinear(best_ring);
    ValidatedPolygon vp = validate(poly);
    if (vp.area() >= min_area) polygons.push_back(std::move(vp));
  }
  return polygons;
}

namespace {

bool point_in_ring(double px, double py, const std::vector<Point>& ring) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = ring[i];
    const Point& b = ring[j];
    if ((a.y > py) != (b.y > py) &&
        px < (b.x - a.x) * (py - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

bool point_in_polygon(double px, double py, const ValidatedPolygon& poly) {
  if (!point_in_ring(px, py, poly.exterior())) return false;
  for (const auto& hole : poly.holes()) {
    if (point_in_ring(px, py, hole)) return false;
  }
  return true;
}

}  // namespace

BinaryMask rasterize_polygons(std::span<const ValidatedPolygon> polygons,
                              int width, int height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("raster dimensions must be positive");
  }
  BinaryMask mask;
  mask.width = width;
  mask.height = height;
  mask.data.assign(static_cast<std::size_t>(width) * height, 0);
  for (const ValidatedPolygon& poly : polygons) {
    const BoundingBox& box = poly.bbox();
    int x0 = std::max(0, static_cast<int>(std::floor(box.min_x)));
    int y0 = std::max(0, static_cast<int>(std::floor(box.min_y)));
    int x1 = std::min(width - 1, static_cast<int>(std::ceil(box.max_x)));
    int y1 = std::min(height - 1, static_cast<int>(std::ceil(box.max_y)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (point_in_polygon(x + 0.5, y + 0.5, poly)) {
          mask.data[static_cast<std::size_t>(y) * width + x] = 1;
        }
      }
    }
  }
  return mask;
}

TimeSeries propagate_ids(const std::vector<std::vector<ValidatedPolygon>>& frames,
                         double threshold, int lookback,
                         std::vector<std::string> labels) {
  if (lookback < 1) {
    throw std::invalid_argument("lookback must be at least 1");
  }
  if (!labels.empty() && labels.size() != frames.size()) {
    throw std::invalid_argument("label count does not match frame count");
  }
  if (labels.empty()) {
    labels.reserve(frames.size());
    for (std::size_t t = 0; t < frames.size(); ++t) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%06zu", t);
      labels.emplace_back(buf);
    }
  }

  struct RosterEntry {
    std::string id;
    ValidatedPolygon geometry;
    int last_frame;
  };

  TimeSeries series;
  std::vector<RosterEntry> roster;
  long long counter = 0;

  for (int t = 0; t < static_cast<int>(frames.size()); ++t) {
    const std::vector<ValidatedPolygon>& polys = frames[t];
    Frame frame;
    frame.timestep_label = labels[t];

    std::vector<std::string> ids(polys.size());
    std::vector<RosterEntry> survivors;
    if (t == 0) {
      for (std::size_t j = 0; j < polys.size(); ++j) {
        ids[j] = std::to_string(counter++);
      }
    } else {
      std::erase_if(roster,
                    [&](const RosterEntry& e) { return e.last_frame < t - lookback; });
      std::vector<ValidatedPolygon> candidates;
      candidates.reserve(roster.size());
      for (const RosterEntry& e : roster) candidates.push_back(e.geometry);

      MatchResult mr = match_frame(candidates, polys, threshold);
      std::vector<bool> matched_roster(roster.size(), false);
      for (const MatchedPair& p : mr.pairs) {
        ids[p.prop_index] = roster[p.gt_index].id;
        matched_roster[p.gt_index] = true;
      }
      for (int j : mr.unmatched_prop) {
        ids[j] = std::to_string(counter++);
      }
      for (std::size_t i = 0; i < roster.size(); ++i) {
        if (!matched_roster[i]) survivors.push_back(roster[i]);
      }
    }

    for (std::size_t j = 0; j < polys.size(); ++j) {
      frame.footprints.push_back(Footprint{ids[j], polys[j]});
    }

    // current frame first (in frame order), then ids not seen this frame;
    // with lookback 1 the stale tail is pruned before the next match
    roster.clear();
    for (std::size_t j = 0; j < polys.size(); ++j) {
      roster.push_back(RosterEntry{ids[j], polys[j], t});
    }
    for (RosterEntry& e : survivors) roster.push_back(std::move(e));

    series.frames.push_back(std::move(frame));
  }
  return series;
}

}  // namespace scot
