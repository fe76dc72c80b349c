#pragma once

#include <span>
#include <vector>

namespace scot {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Point& a, const Point& b) {
  return a.x == b.x && a.y == b.y;
}

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool overlaps(const BoundingBox& other) const {
    return min_x <= other.max_x && other.min_x <= max_x &&
           min_y <= other.max_y && other.min_y <= max_y;
  }
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

/// Raw polygon input in planar pixel units: one exterior ring plus zero
/// or more holes. Rings are stored open (the first vertex is not
/// repeated at the end).
struct Polygon {
  std::vector<Point> exterior;
  std::vector<std::vector<Point>> holes;
};

/// Vertices closer than this (in px) are merged during validation.
inline constexpr double kVertexMergeTolerance = 1e-9;

/// A polygon that passed validate(): rings are simple, the exterior is
/// counter-clockwise, holes are clockwise and lie inside the exterior,
/// and the net area is strictly positive. Area and bounding box are
/// precomputed.
class ValidatedPolygon {
 public:
  const std::vector<Point>& exterior() const { return exterior_; }
  const std::vector<std::vector<Point>>& holes() const { return holes_; }
  double area() const { return area_; }
  const BoundingBox& bbox() const { return bbox_; }

 private:
  friend ValidatedPolygon validate(const Polygon& polygon);

  ValidatedPolygon() = default;

  std::vector<Point> exterior_;
  std::vector<std::vector<Point>> holes_;
  double area_ = 0.0;
  BoundingBox bbox_;
};

/// Checks ring simplicity and topology, normalizes ring orientation,
/// and merges near-coincident vertices.
///
/// Throws DegenerateGeometry for rings with fewer than three distinct
/// vertices, collinear rings, spikes, or zero net area; throws
/// SelfIntersection for rings that cross themselves or holes that break
/// the polygon's topology.
ValidatedPolygon validate(const Polygon& polygon);

/// Exterior area minus hole areas, in px².
inline double area(const ValidatedPolygon& polygon) { return polygon.area(); }

/// Area of the overlap of two validated polygons. Zero for disjoint or
/// merely touching inputs.
double intersection_area(const ValidatedPolygon& a, const ValidatedPolygon& b);

/// Intersection over union, in [0, 1]. Symmetric; 0 for disjoint
/// inputs; 1 for identical geometry.
double iou(const ValidatedPolygon& a, const ValidatedPolygon& b);

/// Area of polygon ∩ (union of covering), in px². Overlapping covering
/// polygons are not double-counted.
double covered_area(const ValidatedPolygon& polygon,
                    std::span<const ValidatedPolygon> covering);

/// Axis-aligned rectangle with corner (x, y), used by the synthetic
/// generator and all over the tests.
ValidatedPolygon make_rect(double x, double y, double width, double height);

/// Translate / rotate helpers for building test geometry.
Polygon translated(const ValidatedPolygon& polygon, double dx, double dy);
Polygon rotated(const ValidatedPolygon& polygon, double angle_rad,
                Point center);

}  // namespace scot
