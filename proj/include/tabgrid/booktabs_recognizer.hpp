#pragma once

#include <span>
#include <string>
#include <vector>

#include "tabgrid/model.hpp"

namespace tabgrid {

// Top, middle and bottom rule of a booktabs table, plus the shorter
// cmidrules found between top and middle.
struct RuleTriple {
  Separator top;
  Separator middle;
  Separator bottom;
  std::vector<Separator> inner_rules;
  bool labeled = false;

  // x-extent of the three rules, y from top-rule center to bottom-rule center.
  BoundingBox region() const;
};

struct HeaderLevel {
  int y = 0;  // rounded mean of the member centers
  std::vector<Separator> rules;
};

struct HeaderLevels {
  std::vector<HeaderLevel> levels;  // top-down

  int header_row_count() const { return static_cast<int>(levels.size()) + 1; }
};

struct Profile {
  Orientation axis = Orientation::Horizontal;
  int origin = 0;
  std::vector<long> values;
};

struct ColumnThreshold {
  double d_page = 0.0;   // median unit distance on the page
  double h_table = 0.0;  // mean word height in the table
  double gamma = 0.0;
  double d_column = 0.0;
};

struct Interval {
  int begin = 0;
  int end = 0;  // exclusive
  int length() const { return end - begin; }
};

// Edge tolerance for "similar" left/right coordinates of two rules.
int alignment_tolerance(const Separator& a, const Separator& b);
bool rules_aligned(const Separator& a, const Separator& b);

// Scans horizontals (sorted by top) for top/middle/bottom triples, taking
// non-overlapping triples greedily from the top of the page. When the config
// requires labels, unlabeled triples are dropped.
std::vector<RuleTriple> find_rule_triples(std::span<const Separator> horizontals,
                                          std::span<const Word> words,
                                          const RecognizerConfig& cfg);

HeaderLevels group_inner_rules(const RuleTriple& triple);

// Per-row sum of clipped word widths over `region`.
Profile horizontal_profile(std::span<const Word> words,
                           const BoundingBox& region);
// Per-column sum of clipped word heights over `region`.
Profile vertical_profile(std::span<const Word> words, const BoundingBox& region);

// Maximal zero runs that touch neither end of the profile.
std::vector<Interval> interior_gaps(const Profile& profile);

// Interior row borders (absolute y) at the middle of every interior gap.
// Throws EmptyBody for an all-zero profile.
std::vector<int> segment_rows(const Profile& profile);

ColumnThreshold compute_column_threshold(const PageLayout& page,
                                         std::span<const Word> table_words,
                                         double gamma);

// Interior column borders (absolute x) at the centers of gaps strictly wider
// than `d_column`. Throws EmptyBody when no word falls inside the region.
std::vector<int> segment_columns(std::span<const Word> projection_words,
                                 const BoundingBox& region, double d_column);

// Builds the cell grid from the rule rows, header levels, and the interior
// body-row and column borders, then merges header cells lying under the same
// cmidrule.
RecognizedTable build_booktabs_grid(const RuleTriple& triple,
                                    const HeaderLevels& levels,
                                    std::span<const int> body_row_borders,
                                    std::span<const int> col_borders,
                                    std::span<const Word> words);

std::vector<RecognizedTable> detect_booktabs_tables(
    const PageLayout& page, const RecognizerConfig& cfg,
    std::vector<std::string>& diagnostics);

// Rule center used for all row borders derived from rules.
inline int rule_y(const Separator& s) { return (s.box.top + s.box.bottom) / 2; }

}  // namespace tabgrid
