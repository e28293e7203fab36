#ifndef CHPEED_MODEL_GEOMETRY_HPP
#define CHPEED_MODEL_GEOMETRY_HPP

#include <span>
#include <vector>

#include "chpeed/types.hpp"

namespace chpeed {

// Convex-polygon helpers for CHP feasible operation regions. Polygons are
// CCW-ordered vertex loops in the (power, heat) plane.

// Twice the signed area of the triangle (a, b, c); positive for CCW turns.
Scalar cross2(const Vec2& a, const Vec2& b, const Vec2& c);

// True iff the loop is a convex CCW polygon with >= 3 vertices and nonzero
// area. Collinear runs are tolerated.
bool is_convex_ccw(std::span<const Vec2> vertices);

// Signed-area half-plane test: true iff point is inside or on the boundary
// within `tol` (measured as Euclidean distance outside the polygon).
bool polygon_contains(std::span<const Vec2> vertices, const Vec2& point,
                      Scalar tol = 1e-6);

// Euclidean distance from point to the polygon (0 for interior points).
Scalar polygon_distance(std::span<const Vec2> vertices, const Vec2& point);

// Nearest polygon point; interior points are returned unchanged.
Vec2 polygon_project(std::span<const Vec2> vertices, const Vec2& point);

// Range of the second coordinate over the polygon slice at first == x
// (i.e. feasible heat range at a fixed power). Returns {lo, hi};
// lo > hi when the slice is empty.
std::pair<Scalar, Scalar> polygon_slice_y(std::span<const Vec2> vertices,
                                          Scalar x);

}  // namespace chpeed

#endif
