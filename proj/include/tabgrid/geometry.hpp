#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>

namespace tabgrid {

// Axis-aligned pixel box, origin top-left, right/bottom exclusive.
struct BoundingBox {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;

  constexpr int width() const { return right - left; }
  constexpr int height() const { return bottom - top; }
  constexpr std::int64_t area() const {
    return static_cast<std::int64_t>(width()) * height();
  }
  constexpr bool valid() const { return left <= right && top <= bottom; }
  constexpr double center_x() const { return (left + right) / 2.0; }
  constexpr double center_y() const { return (top + bottom) / 2.0; }

  // Half-open containment of a point; used for center-based word assignment.
  constexpr bool contains_point(double x, double y) const {
    return x >= left && x < right && y >= top && y < bottom;
  }
  constexpr bool contains(const BoundingBox& o) const {
    return o.left >= left && o.right <= right && o.top >= top &&
           o.bottom <= bottom;
  }

  friend constexpr bool operator==(const BoundingBox&,
                                   const BoundingBox&) = default;
};

std::ostream& operator<<(std::ostream& os, const BoundingBox& b);

// Overlap rectangle; empty (zero area) when the boxes do not overlap.
BoundingBox intersection(const BoundingBox& a, const BoundingBox& b);
std::int64_t intersection_area(const BoundingBox& a, const BoundingBox& b);

// Smallest box containing both.
BoundingBox hull(const BoundingBox& a, const BoundingBox& b);

double iou(const BoundingBox& a, const BoundingBox& b);

BoundingBox expand(const BoundingBox& b, int margin);

// True for positive-area overlap and for edge-to-edge contact.
bool intersects(const BoundingBox& a, const BoundingBox& b);

BoundingBox clamp_to(const BoundingBox& b, int width, int height);

// (l,t,r,b) -> (t,l,b,r)
constexpr BoundingBox transpose(const BoundingBox& b) {
  return {b.top, b.left, b.bottom, b.right};
}

}  // namespace tabgrid
