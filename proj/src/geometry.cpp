#include "tabgrid/geometry.hpp"

namespace tabgrid {

std::ostream& operator<<(std::ostream& os, const BoundingBox& b) {
  return os << "(" << b.left << "," << b.top << "," << b.right << ","
            << b.bottom << ")";
}

BoundingBox intersection(const BoundingBox& a, const BoundingBox& b) {
  BoundingBox r{std::max(a.left, b.left), std::max(a.top, b.top),
                std::min(a.right, b.right), std::min(a.bottom, b.bottom)};
  if (r.right < r.left) r.right = r.left;
  if (r.bottom < r.top) r.bottom = r.top;
  return r;
}

std::int64_t intersection_area(const BoundingBox& a, const BoundingBox& b) {
  return intersection(a, b).area();
}

BoundingBox hull(const BoundingBox& a, const BoundingBox& b) {
  return {std::min(a.left, b.left), std::min(a.top, b.top),
          std::max(a.right, b.right), std::max(a.bottom, b.bottom)};
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const std::int64_t inter = intersection_area(a, b);
  const std::int64_t uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

BoundingBox expand(const BoundingBox& b, int margin) {
  return {b.left - margin, b.top - margin, b.right + margin,
          b.bottom + margin};
}

bool intersects(const BoundingBox& a, const BoundingBox& b) {
  return a.left <= b.right && b.left <= a.right && a.top <= b.bottom &&
         b.top <= a.bottom;
}

BoundingBox clamp_to(const BoundingBox& b, int width, int height) {
  auto cl = [](int v, int hi) { return std::clamp(v, 0, hi); };
  return {cl(b.left, width), cl(b.top, height), cl(b.right, width),
          cl(b.bottom, height)};
}

}  // namespace tabgrid
