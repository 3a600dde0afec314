#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tabgrid/geometry.hpp"

namespace tabgrid {

struct Word {
  BoundingBox box;
  std::string text;
  std::optional<int> line_id;

  friend bool operator==(const Word&, const Word&) = default;
};

enum class Orientation { Horizontal, Vertical };

struct Separator {
  BoundingBox box;
  Orientation orientation = Orientation::Horizontal;

  friend bool operator==(const Separator&, const Separator&) = default;
};

// Squares classify as horizontal.
Orientation classify_orientation(const BoundingBox& box);
bool orientation_consistent(const Separator& s);

struct PageLayout {
  int page_width = 0;
  int page_height = 0;
  std::vector<Word> words;
  std::vector<Separator> separators;
  std::vector<BoundingBox> non_text_regions;

  friend bool operator==(const PageLayout&, const PageLayout&) = default;
};

struct Cell {
  BoundingBox box;
  int row_start = 0;
  int row_end = 0;
  int col_start = 0;
  int col_end = 0;
  std::vector<Word> words;
  std::string content;

  int row_span() const { return row_end - row_start + 1; }
  int col_span() const { return col_end - col_start + 1; }

  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class TableSource { SeparatorBased, BookTabs };

struct RecognizedTable {
  BoundingBox region;
  int n_rows = 0;
  int n_cols = 0;
  std::vector<Cell> cells;
  bool labeled = false;
  TableSource source = TableSource::SeparatorBased;
  int header_row_count = 0;

  // Cell covering grid position (row, col), or nullptr when the grid has a
  // hole there (never the case for a valid table).
  const Cell* cell_at(int row, int col) const;

  friend bool operator==(const RecognizedTable&,
                         const RecognizedTable&) = default;
};

// Empty result means the table satisfies every structural invariant:
// exact tiling of the index grid, non-overlapping cell boxes, cells inside
// the region and words inside their cells.
std::vector<std::string> check_table_invariants(const RecognizedTable& t);

struct RecognizerConfig {
  double gamma = 2.0;
  bool require_labels_booktabs = true;
  bool require_labels_separator = false;
  std::vector<std::string> label_keywords{"table", "tab."};
  int separator_expand_px = 5;
  int label_search_margin_px = 50;

  // Throws ConfigError listing every violated invariant.
  void validate() const;
};

// Sorts words into reading order (lines top-down, words left-to-right) and
// joins their text with single spaces.
std::string join_words(std::vector<Word> words);

// Groups words into text lines. Uses line_id when every word carries one;
// otherwise chains words whose vertical overlap is at least half the smaller
// height. Lines come out top-down, words within a line left-to-right.
std::vector<std::vector<Word>> group_lines(const std::vector<Word>& words);

// Gives each cell the words whose box center it contains and rebuilds its
// content string. Words outside every cell are dropped.
void assign_words(std::vector<Cell>& cells, const std::vector<Word>& words);

}  // namespace tabgrid
