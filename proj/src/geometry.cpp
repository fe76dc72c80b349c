#include "scot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

// keep overlay output in plain double coordinates; the default rescaling
// snaps to an integer grid and costs ~1e-8 of relative area accuracy
#define BOOST_GEOMETRY_NO_ROBUSTNESS

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "scot/errors.hpp"

namespace bg = boost::geometry;

namespace scot {
namespace {

using BgPoint = bg::model::d2::point_xy<double>;
// counter-clockwise outer ring, closed storage
using BgPolygon = bg::model::polygon<BgPoint, false, true>;
using BgMultiPolygon = bg::model::multi_polygon<BgPolygon>;

// Drops consecutive vertices closer than kVertexMergeTolerance,
// including the wrap-around pair.
std::vector<Point> merged_ring(const std::vector<Point>& ring) {
  std::vector<Point> out;
  out.reserve(ring.size());
  for (const Point& p : ring) {
    if (!out.empty() && std::abs(p.x - out.back().x) <= kVertexMergeTolerance &&
        std::abs(p.y - out.back().y) <= kVertexMergeTolerance) {
      continue;
    }
    out.push_back(p);
  }
  while (out.size() > 1 &&
         std::abs(out.front().x - out.back().x) <= kVertexMergeTolerance &&
         std::abs(out.front().y - out.back().y) <= kVertexMergeTolerance) {
    out.pop_back();
  }
  return out;
}

void append_ring(BgPolygon::ring_type& target, const std::vector<Point>& ring) {
  for (const Point& p : ring) {
    bg::append(target, BgPoint(p.x, p.y));
  }
  // close the ring for boost's closed storage
  bg::append(target, BgPoint(ring.front().x, ring.front().y));
}

BgPolygon to_boost(const ValidatedPolygon& polygon) {
  BgPolygon out;
  append_ring(out.outer(), polygon.exterior());
  out.inners().resize(polygon.holes().size());
  for (std::size_t i = 0; i < polygon.holes().size(); ++i) {
    append_ring(out.inners()[i], polygon.holes()[i]);
  }
  return out;
}

std::vector<Point> from_boost_ring(const BgPolygon::ring_type& ring) {
  std::vector<Point> out;
  if (ring.empty()) return out;
  out.reserve(ring.size() - 1);
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {  // skip closing vertex
    out.push_back(Point{bg::get<0>(ring[i]), bg::get<1>(ring[i])});
  }
  return out;
}

bool is_degenerate_failure(bg::validity_failure_type failure) {
  switch (failure) {
    case bg::failure_few_points:
    case bg::failure_wrong_topological_dimension:
    case bg::failure_spikes:
    case bg::failure_duplicate_points:
      return true;
    default:
      return false;
  }
}

}  // namespace

ValidatedPolygon validate(const Polygon& polygon) {
  std::vector<Point> exterior = merged_ring(polygon.exterior);
  if (exterior.size() < 3) {
    throw DegenerateGeometry("exterior ring has fewer than 3 distinct vertices");
  }

  BgPolygon bp;
  append_ring(bp.outer(), exterior);
  std::vector<std::vector<Point>> holes;
  holes.reserve(polygon.holes.size());
  for (const auto& hole : polygon.holes) {
    std::vector<Point> ring = merged_ring(hole);
    if (ring.size() < 3) {
      throw DegenerateGeometry("hole ring has fewer than 3 distinct vertices");
    }
    holes.push_back(std::move(ring));
    bp.inners().emplace_back();
    append_ring(bp.inners().back(), holes.back());
  }

  bg::correct(bp);  // fixes ring orientation and closure

  bg::validity_failure_type failure = bg::no_failure;
  if (!bg::is_valid(bp, failure)) {
    std::string message;
    bg::is_valid(bp, message);
    if (is_degenerate_failure(failure)) {
      throw DegenerateGeometry(message);
    }
    throw SelfIntersection(message);
  }

  double net_area = bg::area(bp);
  if (!(net_area > 0.0)) {
    throw DegenerateGeometry("polygon has zero area");
  }

  ValidatedPolygon out;
  out.exterior_ = from_boost_ring(bp.outer());
  out.holes_.clear();
  for (const auto& inner : bp.inners()) {
    out.holes_.push_back(from_boost_ring(inner));
  }
  out.area_ = net_area;

  BoundingBox box{std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  for (const Point& p : out.exterior_) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  out.bbox_ = box;
  return out;
}

double intersection_area(const ValidatedPolygon& a, const ValidatedPolygon& b) {
  if (!a.bbox().overlaps(b.bbox())) {
    return 0.0;
  }
  BgMultiPolygon pieces;
  bg::intersection(to_boost(a), to_boost(b), pieces);
  double total = 0.0;
  for (const BgPolygon& piece : pieces) {
    total += bg::area(piece);
  }
  return std::max(total, 0.0);
}

double iou(const ValidatedPolygon& a, const ValidatedPolygon& b) {
  double inter = intersection_area(a, b);
  if (inter <= 0.0) {
    return 0.0;
  }
  double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) {
    return 1.0;
  }
  return std::clamp(inter / uni, 0.0, 1.0);
}

double covered_area(const ValidatedPolygon& polygon,
                    std::span<const ValidatedPolygon> covering) {
  BgMultiPolygon merged;
  for (const ValidatedPolygon& cover : covering) {
    if (!polygon.bbox().overlaps(cover.bbox())) continue;
    BgMultiPolygon next;
    bg::union_(merged, to_boost(cover), next);
    merged = std::move(next);
  }
  if (merged.empty()) return 0.0;
  BgMultiPolygon pieces;
  bg::intersection(to_boost(polygon), merged, pieces);
  double total = 0.0;
  for (const BgPolygon& piece : pieces) {
    total += bg::area(piece);
  }
  return std::max(total, 0.0);
}

ValidatedPolygon make_rect(double x, double y, double width, double height) {
  Polygon p;
  p.exterior = {Point{x, y}, Point{x + width, y}, Point{x + width, y + height},
                Point{x, y + height}};
  return validate(p);
}

Polygon translated(const ValidatedPolygon& polygon, double dx, double dy) {
  Polygon out;
  out.exterior.reserve(polygon.exterior().size());
  for (const Point& p : polygon.exterior()) {
    out.exterior.push_back(Point{p.x + dx, p.y + dy});
  }
  for (const auto& hole : polygon.holes()) {
    out.holes.emplace_back();
    for (const Point& p : hole) {
      out.holes.back().push_back(Point{p.x + dx, p.y + dy});
    }
  }
  return out;
}

Polygon rotated(const ValidatedPolygon& polygon, double angle_rad,
                Point center) {
  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  auto rotate = [&](const Point& p) {
    double dx = p.x - center.x;
    double dy = p.y - center.y;
    return Point{center.x + c * dx - s * dy, center.y + s * dx + c * dy};
  };
  Polygon out;
  for (const Point& p : polygon.exterior()) {
    out.exterior.push_back(rotate(p));
  }
  for (const auto& hole : polygon.holes()) {
    out.holes.emplace_back();
    for (const Point& p : hole) {
      out.holes.back().push_back(rotate(p));
    }
  }
  return out;
}

}  // namespace scot
