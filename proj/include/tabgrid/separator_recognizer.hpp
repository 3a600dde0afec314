#pragma once

#include <span>
#include <string>
#include <vector>

#include "tabgrid/model.hpp"

namespace tabgrid {

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// A connected group of expanded ruling boxes.
struct SeparatorCluster {
  std::vector<Separator> members;  // expanded boxes, canonical order
  BoundingBox hull;
  std::vector<Point> intersections;

  int count(Orientation o) const;
};

struct RoughGrid {
  std::vector<int> row_borders;  // strictly increasing y
  std::vector<int> col_borders;  // strictly increasing x
  std::vector<std::vector<BoundingBox>> cells;  // [row][col]

  int rows() const { return static_cast<int>(row_borders.size()) - 1; }
  int cols() const { return static_cast<int>(col_borders.size()) - 1; }
};

// Borders closer than this collapse into one.
inline constexpr int kBorderTolerancePx = 3;

// Expands every separator by `expand_px` and groups them into connected
// components under `intersects`. Components lacking either orientation are
// dropped. Output is sorted by hull (top, left) and independent of input
// order.
std::vector<SeparatorCluster> merge_separators(
    std::span<const Separator> separators, int expand_px);

// True when a word above or below `hull`, within the configured margin and
// horizontally overlapping the (margin-widened) hull, starts with one of the
// label keywords (case-insensitive prefix).
bool assign_table_label(const BoundingBox& hull, std::span<const Word> words,
                        const RecognizerConfig& cfg);

// Case-insensitive prefix test used for label keywords.
bool starts_with_keyword(const std::string& text,
                         std::span<const std::string> keywords);

// Collapses sorted positions whose distance to the first of their group is
// within `tolerance` and returns the rounded group means.
std::vector<int> cluster_positions(std::vector<double> positions,
                                   int tolerance);

// Throws DegenerateGrid unless both directions yield at least two borders.
RoughGrid estimate_grid(const SeparatorCluster& cluster);

// Merges rough cells whose shared border carries no ruling of the cluster,
// first left-to-right, then top-down (only between cells of equal column
// span), and fills cells with the words whose centers they contain.
RecognizedTable refine_grid(const RoughGrid& grid,
                            const SeparatorCluster& cluster,
                            std::span<const Word> words);

// Runs the whole separator-based heuristic on one page. Candidates that fail
// a stage are recorded in `diagnostics` and skipped.
std::vector<RecognizedTable> detect_separator_tables(
    const PageLayout& page, const RecognizerConfig& cfg,
    std::vector<std::string>& diagnostics);

}  // namespace tabgrid
