#include "tabgrid/separator_recognizer.hpp"

#include <algorithm>
#include <sstream>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "tabgrid/errors.hpp"

namespace tabgrid {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Keeps the smaller root so the result does not depend on call order.
  std::size_t unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return a;
  }

 private:
  std::vector<std::size_t> parent_;
};

auto separator_key(const Separator& s) {
  return std::make_tuple(static_cast<int>(s.orientation), s.box.top,
                         s.box.left, s.box.bottom, s.box.right);
}

std::string lower_ascii(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Probe window spanning the middle 60% of [lo, hi).
std::pair<int, int> middle_span(int lo, int hi) {
  const int len = hi - lo;
  int a = lo + static_cast<int>(std::ceil(0.2 * len));
  int b = lo + static_cast<int>(std::floor(0.8 * len));
  if (b <= a) {
    a = lo;
    b = hi;
  }
  return {a, b};
}

constexpr int kProbeHalfWidth = 2;

bool any_overlaps(const BoundingBox& probe, std::span<const Separator> seps,
                  Orientation o) {
  for (const Separator& s : seps)
    if (s.orientation == o && intersection_area(probe, s.box) > 0) return true;
  return false;
}

}  // namespace

int SeparatorCluster::count(Orientation o) const {
  return static_cast<int>(std::count_if(
      members.begin(), members.end(),
      [o](const Separator& s) { return s.orientation == o; }));
}

std::vector<SeparatorCluster> merge_separators(
    std::span<const Separator> separators, int expand_px) {
  std::vector<Separator> expanded;
  expanded.reserve(separators.size());
  for (const Separator& s : separators)
    expanded.push_back({expand(s.box, expand_px), s.orientation});
  std::sort(expanded.begin(), expanded.end(),
            [](const Separator& a, const Separator& b) {
              return separator_key(a) < separator_key(b);
            });

  DisjointSets sets(expanded.size());
  for (std::size_t i = 0; i < expanded.size(); ++i)
    for (std::size_t j = i + 1; j < expanded.size(); ++j)
      if (intersects(expanded[i].box, expanded[j].box)) sets.unite(i, j);

  std::map<std::size_t, SeparatorCluster> groups;
  for (std::size_t i = 0; i < expanded.size(); ++i)
    groups[sets.find(i)].members.push_back(expanded[i]);

  std::vector<SeparatorCluster> clusters;
  for (auto& [root, c] : groups) {
    if (c.count(Orientation::Horizontal) == 0 ||
        c.count(Orientation::Vertical) == 0)
      continue;
    c.hull = c.members.front().box;
    for (const Separator& m : c.members) c.hull = hull(c.hull, m.box);
    for (const Separator& h : c.members) {
      if (h.orientation != Orientation::Horizontal) continue;
      for (const Separator& v : c.members) {
        if (v.orientation != Orientation::Vertical) continue;
        if (!intersects(h.box, v.box)) continue;
        const BoundingBox x = intersection(h.box, v.box);
        c.intersections.push_back(
            {(x.left + x.right) / 2, (x.top + x.bottom) / 2});
      }
    }
    std::sort(c.intersections.begin(), c.intersections.end(),
              [](const Point& a, const Point& b) {
                return std::tie(a.y, a.x) < std::tie(b.y, b.x);
              });
    clusters.push_back(std::move(c));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const SeparatorCluster& a, const SeparatorCluster& b) {
              return std::tie(a.hull.top, a.hull.left, a.hull.bottom,
                              a.hull.right) < std::tie(b.hull.top, b.hull.left,
                                                       b.hull.bottom,
                                                       b.hull.right);
            });
  return clusters;
}

bool starts_with_keyword(const std::string& text,
                         std::span<const std::string> keywords) {
  const std::string t = lower_ascii(text);
  for (const std::string& k : keywords) {
    const std::string lk = lower_ascii(k);
    if (!lk.empty() && t.compare(0, lk.size(), lk) == 0) return true;
  }
  return false;
}

bool assign_table_label(const BoundingBox& hull, std::span<const Word> words,
                        const RecognizerConfig& cfg) {
  const int m = cfg.label_search_margin_px;
  for (const Word& w : words) {
    if (w.box.right <= hull.left - m || w.box.left >= hull.right + m) continue;
    const double cy = w.box.center_y();
    const bool above = cy < hull.top && hull.top - w.box.bottom <= m;
    const bool below = cy >= hull.bottom && w.box.top - hull.bottom <= m;
    if ((above || below) && starts_with_keyword(w.text, cfg.label_keywords))
      return true;
  }
  return false;
}

std::vector<int> cluster_positions(std::vector<double> positions,
                                   int tolerance) {
  std::sort(positions.begin(), positions.end());
  std::vector<int> out;
  std::size_t i = 0;
  while (i < positions.size()) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < positions.size() && positions[j] - positions[i] <= tolerance) {
      sum += positions[j];
      ++j;
    }
    const int v = static_cast<int>(std::lround(sum / static_cast<double>(j - i)));
    if (out.empty() || v > out.back()) out.push_back(v);
    i = j;
  }
  return out;
}

RoughGrid estimate_grid(const SeparatorCluster& cluster) {
  std::vector<double> ys;
  std::vector<double> xs;
  for (const Separator& s : cluster.members) {
    if (s.orientation == Orientation::Horizontal)
      ys.push_back(s.box.center_y());
    else
      xs.push_back(s.box.center_x());
  }
  RoughGrid g;
  g.row_borders = cluster_positions(std::move(ys), kBorderTolerancePx);
  g.col_borders = cluster_positions(std::move(xs), kBorderTolerancePx);
  if (g.row_borders.size() < 2 || g.col_borders.size() < 2)
    throw DegenerateGrid("separator cluster yields " +
                         std::to_string(g.row_borders.size()) +
                         " row and " + std::to_string(g.col_borders.size()) +
                         " column borders; need at least 2 of each");
  g.cells.resize(static_cast<std::size_t>(g.rows()));
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      g.cells[i].push_back({g.col_borders[j], g.row_borders[i],
                            g.col_borders[j + 1], g.row_borders[i + 1]});
  return g;
}

RecognizedTable refine_grid(const RoughGrid& grid,
                            const SeparatorCluster& cluster,
                            std::span<const Word> words) {
  const int nr = grid.rows();
  const int nc = grid.cols();
  auto id = [nc](int r, int c) { return static_cast<std::size_t>(r) * nc + c; };

  struct Extent {
    int r0, r1, c0, c1;
  };
  std::vector<Extent> extent(static_cast<std::size_t>(nr) * nc);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) extent[id(r, c)] = {r, r, c, c};

  DisjointSets sets(extent.size());
  auto merge = [&](std::size_t a, std::size_t b) {
    const Extent ea = extent[sets.find(a)];
    const Extent eb = extent[sets.find(b)];
    const std::size_t root = sets.unite(a, b);
    extent[root] = {std::min(ea.r0, eb.r0), std::max(ea.r1, eb.r1),
                    std::min(ea.c0, eb.c0), std::max(ea.c1, eb.c1)};
  };

  const std::span<const Separator> members(cluster.members);

  for (int r = 0; r < nr; ++r) {
    const auto [y0, y1] = middle_span(grid.row_borders[r], grid.row_borders[r + 1]);
    for (int c = 0; c + 1 < nc; ++c) {
      const int x = grid.col_borders[c + 1];
      const BoundingBox probe{x - kProbeHalfWidth, y0, x + kProbeHalfWidth, y1};
      if (!any_overlaps(probe, members, Orientation::Vertical))
        merge(id(r, c), id(r, c + 1));
    }
  }

  for (int r = 0; r + 1 < nr; ++r) {
    const int y = grid.row_borders[r + 1];
    for (int c = 0; c < nc; ++c) {
      const auto [x0, x1] = middle_span(grid.col_borders[c], grid.col_borders[c + 1]);
      const BoundingBox probe{x0, y - kProbeHalfWidth, x1, y + kProbeHalfWidth};
      if (any_overlaps(probe, members, Orientation::Horizontal)) continue;
      const std::size_t a = sets.find(id(r, c));
      const std::size_t b = sets.find(id(r + 1, c));
      if (a == b) continue;
      if (extent[a].c0 == extent[b].c0 && extent[a].c1 == extent[b].c1)
        merge(a, b);
    }
  }

  RecognizedTable t;
  t.source = TableSource::SeparatorBased;
  t.n_rows = nr;
  t.n_cols = nc;
  t.region = {grid.col_borders.front(), grid.row_borders.front(),
              grid.col_borders.back(), grid.row_borders.back()};
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      if (sets.find(id(r, c)) != id(r, c)) continue;
      const Extent& e = extent[id(r, c)];
      Cell cell;
      cell.row_start = e.r0;
      cell.row_end = e.r1;
      cell.col_start = e.c0;
      cell.col_end = e.c1;
      cell.box = {grid.col_borders[e.c0], grid.row_borders[e.r0],
                  grid.col_borders[e.c1 + 1], grid.row_borders[e.r1 + 1]};
      t.cells.push_back(std::move(cell));
    }
  }
  std::sort(t.cells.begin(), t.cells.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.row_start, a.col_start) < std::tie(b.row_start, b.col_start);
  });
  assign_words(t.cells, {words.begin(), words.end()});
  return t;
}

std::vector<RecognizedTable> detect_separator_tables(
    const PageLayout& page, const RecognizerConfig& cfg,
    std::vector<std::string>& diagnostics) {
  std::vector<RecognizedTable> tables;
  const auto clusters = merge_separators(page.separators, cfg.separator_expand_px);
  for (const SeparatorCluster& cluster : clusters) {
    const bool labeled = assign_table_label(cluster.hull, page.words, cfg);
    if (cfg.require_labels_separator && !labeled) {
      diagnostics.push_back("separator candidate at " + [&] {
        std::ostringstream os;
        os << cluster.hull;
        return os.str();
      }() + " dropped: no table label");
      continue;
    }
    try {
      RoughGrid grid = estimate_grid(cluster);
      RecognizedTable t = refine_grid(grid, cluster, page.words);
      t.labeled = labeled;
      tables.push_back(std::move(t));
    } catch (const DegenerateGrid& e) {
      diagnostics.push_back(std::string("separator candidate skipped: ") + e.what());
    }
  }
  return tables;
}

}  // namespace tabgrid
