#pragma once

// Deliberately naive reference implementations used to cross-check the
// library on small inputs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "tabgrid/geometry.hpp"
#include "tabgrid/matching.hpp"
#include "tabgrid/model.hpp"

namespace oracle {

// Exhaustive search over every matching: each left vertex picks an unused
// right vertex or stays unmatched.
inline double brute_force_matching(const tabgrid::WeightedBipartiteGraph& g) {
  std::vector<std::vector<double>> w(g.n_left, std::vector<double>(g.n_right, -1.0));
  for (const auto& e : g.edges) w[e.left][e.right] = e.weight;
  std::vector<bool> used(g.n_right, false);
  std::function<double(int)> best = [&](int l) -> double {
    if (l == g.n_left) return 0.0;
    double b = best(l + 1);
    for (int r = 0; r < g.n_right; ++r) {
      if (used[r] || w[l][r] < 0.0) continue;
      used[r] = true;
      b = std::max(b, w[l][r] + best(l + 1));
      used[r] = false;
    }
    return b;
  };
  return best(0);
}

// Full-matrix Wagner-Fischer over bytes.
inline std::size_t levenshtein_matrix(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
  return d[a.size()][b.size()];
}

// Pixel-counting IoU.
inline double iou_by_pixels(const tabgrid::BoundingBox& a, const tabgrid::BoundingBox& b) {
  const int x0 = std::min(a.left, b.left), x1 = std::max(a.right, b.right);
  const int y0 = std::min(a.top, b.top), y1 = std::max(a.bottom, b.bottom);
  long inter = 0, uni = 0;
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) {
      const bool ia = x >= a.left && x < a.right && y >= a.top && y < a.bottom;
      const bool ib = x >= b.left && x < b.right && y >= b.top && y < b.bottom;
      inter += ia && ib;
      uni += ia || ib;
    }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Closed-interval contact test written independently of the library.
inline bool touches(const tabgrid::BoundingBox& a, const tabgrid::BoundingBox& b) {
  return !(a.right < b.left || b.right < a.left || a.bottom < b.top || b.bottom < a.top);
}

// Connected components of expanded separators by pairwise contact, as sets
// of input indices; single-orientation components removed.
inline std::set<std::set<int>> separator_components(const std::vector<tabgrid::Separator>& seps,
                                                    int expand_px) {
  const int n = static_cast<int>(seps.size());
  std::vector<int> comp(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v)
        if (comp[v] < 0 && touches(tabgrid::expand(seps[u].box, expand_px),
                                    tabgrid::expand(seps[v].box, expand_px))) {
          comp[v] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  std::set<std::set<int>> out;
  for (int c = 0; c < next; ++c) {
    std::set<int> members;
    bool h = false, v = false;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) {
        members.insert(i);
        (seps[i].orientation == tabgrid::Orientation::Horizontal ? h : v) = true;
      }
    if (h && v) out.insert(members);
  }
  return out;
}

// Centers of all horizontal-vertical overlap rectangles of expanded boxes.
inline std::vector<std::pair<double, double>> crossing_centers(
    const std::vector<tabgrid::Separator>& seps, int expand_px) {
  std::vector<std::pair<double, double>> out;
  for (const auto& h : seps) {
    if (h.orientation != tabgrid::Orientation::Horizontal) continue;
    for (const auto& v : seps) {
      if (v.orientation != tabgrid::Orientation::Vertical) continue;
      const auto a = tabgrid::expand(h.box, expand_px);
      const auto b = tabgrid::expand(v.box, expand_px);
      if (!touches(a, b)) continue;
      const int l = std::max(a.left, b.left), r = std::min(a.right, b.right);
      const int t = std::max(a.top, b.top), bo = std::min(a.bottom, b.bottom);
      out.push_back({(l + r) / 2.0, (t + bo) / 2.0});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Covered-index count taken cell by cell; tiling means every grid index is
// covered exactly once.
inline bool tiles_exactly(const tabgrid::RecognizedTable& t) {
  std::vector<int> cover(static_cast<std::size_t>(t.n_rows) * t.n_cols, 0);
  for (const auto& c : t.cells) {
    if (c.row_start < 0 || c.col_start < 0 || c.row_end >= t.n_rows || c.col_end >= t.n_cols ||
        c.row_start > c.row_end || c.col_start > c.col_end)
      return false;
    for (int r = c.row_start; r <= c.row_end; ++r)
      for (int k = c.col_start; k <= c.col_end; ++k) ++cover[r * t.n_cols + k];
  }
  return std::all_of(cover.begin(), cover.end(), [](int v) { return v == 1; });
}

}  // namespace oracle
