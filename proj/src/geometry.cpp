#include "chpeed/model/geometry.hpp"

#include <algorithm>
#include <limits>

namespace chpeed {

Scalar cross2(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool is_convex_ccw(std::span<const Vec2> v) {
  const auto n = v.size();
  if (n < 3) return false;
  Scalar area2 = 0.0;
  bool any_left = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    const Vec2& c = v[(i + 2) % n];
    const Scalar cr = cross2(a, b, c);
    // Scale-aware tolerance for collinear runs.
    const Scalar scale = (b - a).norm() * (c - b).norm();
    if (cr < -1e-9 * std::max(scale, Scalar(1))) return false;
    if (cr > 1e-9 * std::max(scale, Scalar(1))) any_left = true;
    area2 += a.x() * b.y() - b.x() * a.y();
  }
  return any_left && area2 > 0.0;
}

namespace {

Vec2 segment_project(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const Scalar t = std::clamp((p - a).dot(ab) / len2, Scalar(0), Scalar(1));
  return a + t * ab;
}

}  // namespace

bool polygon_contains(std::span<const Vec2> v, const Vec2& p, Scalar tol) {
  const auto n = v.size();
  bool inside = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (cross2(v[i], v[(i + 1) % n], p) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return true;
  return polygon_distance(v, p) <= tol;
}

Scalar polygon_distance(std::span<const Vec2> v, const Vec2& p) {
  const auto n = v.size();
  bool inside = true;
  Scalar best = std::numeric_limits<Scalar>::max();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross2(v[i], v[(i + 1) % n], p) < 0.0) inside = false;
    best = std::min(best, (segment_project(v[i], v[(i + 1) % n], p) - p).norm());
  }
  return inside ? 0.0 : best;
}

Vec2 polygon_project(std::span<const Vec2> v, const Vec2& p) {
  const auto n = v.size();
  bool inside = true;
  Scalar best = std::numeric_limits<Scalar>::max();
  Vec2 nearest = v[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (cross2(v[i], v[(i + 1) % n], p) < 0.0) inside = false;
    const Vec2 q = segment_project(v[i], v[(i + 1) % n], p);
    const Scalar d = (q - p).norm();
    if (d < best) {
      best = d;
      nearest = q;
    }
  }
  return inside ? p : nearest;
}

std::pair<Scalar, Scalar> polygon_slice_y(std::span<const Vec2> v, Scalar x) {
  const auto n = v.size();
  Scalar lo = std::numeric_limits<Scalar>::max();
  Scalar hi = std::numeric_limits<Scalar>::lowest();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    const Scalar x0 = a.x(), x1 = b.x();
    if ((x0 - x) * (x1 - x) > 0.0) continue;  // edge does not reach x
    if (x0 == x1) {
      if (x0 == x) {
        lo = std::min({lo, a.y(), b.y()});
        hi = std::max({hi, a.y(), b.y()});
      }
      continue;
    }
    const Scalar t = (x - x0) / (x1 - x0);
    if (t < 0.0 || t > 1.0) continue;
    const Scalar y = a.y() + t * (b.y() - a.y());
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  return {lo, hi};
}

}  // namespace chpeed
