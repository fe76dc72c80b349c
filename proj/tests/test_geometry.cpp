#include <doctest.h>

#include <cmath>

#include "scot/errors.hpp"
#include "scot/geometry.hpp"
#include "scot/rng.hpp"

#include "helpers.hpp"

using namespace scot;

namespace {

Polygon ring(std::vector<Point> pts) {
  Polygon p;
  p.exterior = std::move(pts);
  return p;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("unit square validates with area 1") {
  ValidatedPolygon sq = validate(ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(sq.area() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sq.bbox().min_x == 0.0);
  CHECK(sq.bbox().max_y == 1.0);
  CHECK(sq.exterior().size() == 4);
}

TEST_CASE("a ring closed on disk is accepted as-is") {
  ValidatedPolygon sq =
      validate(ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}));
  CHECK(sq.area() == doctest::Approx(1.0));
  CHECK(sq.exterior().size() == 4);
}

TEST_CASE("collinear ring is degenerate") {
  CHECK_THROWS_AS(validate(ring({{0, 0}, {1, 1}, {2, 2}})), DegenerateGeometry);
}

TEST_CASE("fewer than three distinct vertices is degenerate") {
  CHECK_THROWS_AS(validate(ring({{0, 0}, {1, 0}})), DegenerateGeometry);
  CHECK_THROWS_AS(validate(ring({{0, 0}, {0, 0}, {0, 0}, {0, 0}})),
                  DegenerateGeometry);
}

TEST_CASE("bowtie is a self-intersection") {
  CHECK_THROWS_AS(validate(ring({{0, 0}, {2, 2}, {2, 0}, {0, 2}})),
                  SelfIntersection);
}

TEST_CASE("triangle area is 2") {
  CHECK(validate(ring({{0, 0}, {2, 0}, {0, 2}})).area() ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("square with centered hole has area 0.75") {
  Polygon p = ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  p.holes.push_back({{0.25, 0.25}, {0.75, 0.25}, {0.75, 0.75}, {0.25, 0.75}});
  ValidatedPolygon vp = validate(p);
  CHECK(vp.area() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(vp.holes().size() == 1);
}

TEST_CASE("hole outside the exterior is rejected") {
  Polygon p = ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  p.holes.push_back({{2, 2}, {3, 2}, {3, 3}, {2, 3}});
  CHECK_THROWS_AS(validate(p), SelfIntersection);
}

TEST_CASE("near-coincident vertices are merged") {
  ValidatedPolygon sq = validate(
      ring({{0, 0}, {1e-10, 1e-10}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(sq.exterior().size() == 4);
  CHECK(sq.area() == doctest::Approx(1.0));
}

TEST_CASE("intersection area of offset unit squares is 0.5") {
  ValidatedPolygon a = make_rect(0, 0, 1, 1);
  ValidatedPolygon b = make_rect(0.5, 0, 1, 1);
  CHECK(intersection_area(a, b) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("disjoint and edge-sharing polygons do not intersect") {
  ValidatedPolygon a = make_rect(0, 0, 1, 1);
  CHECK(intersection_area(a, make_rect(5, 5, 1, 1)) == 0.0);
  CHECK(intersection_area(a, make_rect(1, 0, 1, 1)) == 0.0);
  CHECK(iou(a, make_rect(1, 0, 1, 1)) == 0.0);
}

TEST_CASE("iou analytic cases") {
  ValidatedPolygon a = make_rect(0, 0, 1, 1);
  CHECK(iou(a, a) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(iou(a, make_rect(5, 5, 1, 1)) == 0.0);
  CHECK(iou(a, make_rect(0.5, 0, 1, 1)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("iou hits an exact quarter on a binary-exact construction") {
  // intersection 0.5, union 2.0
  ValidatedPolygon a = make_rect(0, 0, 1, 1);
  ValidatedPolygon b = make_rect(0, 0.5, 1, 1.5);
  CHECK(iou(a, b) == 0.25);
}

TEST_CASE("covered_area does not double-count overlapping covers") {
  ValidatedPolygon fp = make_rect(0, 0, 10, 10);
  std::vector<ValidatedPolygon> covers = {make_rect(0, 0, 6, 10),
                                          make_rect(4, 0, 6, 10)};
  CHECK(covered_area(fp, covers) == doctest::Approx(100.0).epsilon(1e-9));

  std::vector<ValidatedPolygon> partial = {make_rect(0, 0, 4, 10)};
  CHECK(covered_area(fp, partial) == doctest::Approx(40.0).epsilon(1e-9));
  CHECK(covered_area(fp, {}) == 0.0);
}

TEST_CASE("randomized symmetry, bounds, and clipping sanity") {
  Rng rng(20240601);
  for (int i = 0; i < 2000; ++i) {
    ValidatedPolygon a = testutil::random_rect(rng, 20.0, 0.5, 8.0);
    ValidatedPolygon b = testutil::random_rect(rng, 20.0, 0.5, 8.0);
    double ab = iou(a, b);
    double ba = iou(b, a);
    // the overlay kernel is not argument-order symmetric at the ulp level
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    double inter = intersection_area(a, b);
    CHECK(inter <= std::min(a.area(), b.area()) + 1e-9);
    CHECK(iou(a, a) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("rectangle iou matches the closed form") {
  Rng rng(77);
  for (int i = 0; i < 2000; ++i) {
    double ax = rng.uniform(0, 10), ay = rng.uniform(0, 10);
    double aw = rng.uniform(0.5, 6), ah = rng.uniform(0.5, 6);
    double bx = rng.uniform(0, 10), by = rng.uniform(0, 10);
    double bw = rng.uniform(0.5, 6), bh = rng.uniform(0.5, 6);
    double ix = std::max(0.0, std::min(ax + aw, bx + bw) - std::max(ax, bx));
    double iy = std::max(0.0, std::min(ay + ah, by + bh) - std::max(ay, by));
    double inter = ix * iy;
    double expected = inter <= 0.0 ? 0.0 : inter / (aw * ah + bw * bh - inter);
    double got = iou(make_rect(ax, ay, aw, ah), make_rect(bx, by, bw, bh));
    CHECK(got == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("area is translation- and rotation-invariant") {
  Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    ValidatedPolygon p = testutil::random_rect(rng, 20.0, 0.5, 8.0);
    double dx = rng.uniform(-50, 50), dy = rng.uniform(-50, 50);
    double angle = rng.uniform(0, 6.283185307179586);
    ValidatedPolygon moved = validate(translated(p, dx, dy));
    ValidatedPolygon spun =
        validate(rotated(p, angle, Point{10.0, 10.0}));
    CHECK(moved.area() == doctest::Approx(p.area()).epsilon(1e-9));
    CHECK(spun.area() == doctest::Approx(p.area()).epsilon(1e-9));
  }
}

}  // TEST_SUITE
