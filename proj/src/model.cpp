#include "tabgrid/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tabgrid/errors.hpp"

namespace tabgrid {

Orientation classify_orientation(const BoundingBox& box) {
  return box.width() >= box.height() ? Orientation::Horizontal
                                     : Orientation::Vertical;
}

bool orientation_consistent(const Separator& s) {
  if (s.orientation == Orientation::Horizontal)
    return s.box.width() >= s.box.height();
  return s.box.height() >= s.box.width();
}

const Cell* RecognizedTable::cell_at(int row, int col) const {
  for (const Cell& c : cells) {
    if (row >= c.row_start && row <= c.row_end && col >= c.col_start &&
        col <= c.col_end)
      return &c;
  }
  return nullptr;
}

std::vector<std::string> check_table_invariants(const RecognizedTable& t) {
  std::vector<std::string> problems;
  auto report = [&](const std::string& s) { problems.push_back(s); };
  if (t.n_rows <= 0 || t.n_cols <= 0) {
    report("non-positive grid size");
    return problems;
  }
  std::vector<int> cover(static_cast<std::size_t>(t.n_rows) * t.n_cols, 0);
  for (std::size_t k = 0; k < t.cells.size(); ++k) {
    const Cell& c = t.cells[k];
    if (c.row_start > c.row_end || c.col_start > c.col_end ||
        c.row_start < 0 || c.col_start < 0 || c.row_end >= t.n_rows ||
        c.col_end >= t.n_cols) {
      report("cell " + std::to_string(k) + " has invalid span");
      continue;
    }
    for (int r = c.row_start; r <= c.row_end; ++r)
      for (int q = c.col_start; q <= c.col_end; ++q)
        ++cover[static_cast<std::size_t>(r) * t.n_cols + q];
    if (!c.box.valid()) report("cell " + std::to_string(k) + " box invalid");
    if (!t.region.contains(c.box))
      report("cell " + std::to_string(k) + " outside region");
    for (const Word& w : c.words) {
      if (!c.box.contains_point(w.box.center_x(), w.box.center_y()))
        report("cell " + std::to_string(k) + " holds a word centered outside");
    }
  }
  for (int r = 0; r < t.n_rows; ++r) {
    for (int q = 0; q < t.n_cols; ++q) {
      int n = cover[static_cast<std::size_t>(r) * t.n_cols + q];
      if (n != 1) {
        std::ostringstream os;
        os << "grid index (" << r << "," << q << ") covered " << n << " times";
        report(os.str());
      }
    }
  }
  for (std::size_t i = 0; i < t.cells.size(); ++i)
    for (std::size_t j = i + 1; j < t.cells.size(); ++j)
      if (intersection_area(t.cells[i].box, t.cells[j].box) > 0)
        report("cells " + std::to_string(i) + " and " + std::to_string(j) +
               " overlap");
  return problems;
}

void RecognizerConfig::validate() const {
  std::vector<std::string> v;
  if (!(gamma > 0.0)) v.push_back("gamma must be positive");
  if ((require_labels_booktabs || require_labels_separator) &&
      label_keywords.empty())
    v.push_back("label_keywords must be non-empty when labels are required");
  for (const auto& k : label_keywords)
    if (k.empty()) v.push_back("label_keywords contains an empty keyword");
  if (separator_expand_px < 0) v.push_back("separator_expand_px must be >= 0");
  if (label_search_margin_px < 0)
    v.push_back("label_search_margin_px must be >= 0");
  if (!v.empty()) throw ConfigError(std::move(v));
}

namespace {

bool same_line(const Word& a, const Word& b) {
  const int overlap = std::min(a.box.bottom, b.box.bottom) -
                      std::max(a.box.top, b.box.top);
  const int min_h = std::min(a.box.height(), b.box.height());
  if (min_h == 0) return a.box.center_y() == b.box.center_y();
  return 2 * overlap >= min_h;
}

bool left_to_right(const Word& a, const Word& b) {
  if (a.box.left != b.box.left) return a.box.left < b.box.left;
  if (a.box.top != b.box.top) return a.box.top < b.box.top;
  return a.text < b.text;
}

}  // namespace

std::vector<std::vector<Word>> group_lines(const std::vector<Word>& words) {
  std::vector<std::vector<Word>> lines;
  if (words.empty()) return lines;

  const bool have_ids = std::all_of(words.begin(), words.end(),
                                    [](const Word& w) { return w.line_id; });
  if (have_ids) {
    std::map<int, std::vector<Word>> by_id;
    for (const Word& w : words) by_id[*w.line_id].push_back(w);
    for (auto& [id, line] : by_id) lines.push_back(std::move(line));
  } else {
    std::vector<Word> sorted = words;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Word& a, const Word& b) {
                       if (a.box.top != b.box.top) return a.box.top < b.box.top;
                       return a.box.left < b.box.left;
                     });
    for (const Word& w : sorted) {
      if (!lines.empty() && same_line(lines.back().back(), w))
        lines.back().push_back(w);
      else
        lines.push_back({w});
    }
  }
  for (auto& line : lines) std::stable_sort(line.begin(), line.end(), left_to_right);
  std::stable_sort(lines.begin(), lines.end(),
                   [](const std::vector<Word>& a, const std::vector<Word>& b) {
                     auto top = [](const std::vector<Word>& l) {
                       int t = l.front().box.top;
                       for (const Word& w : l) t = std::min(t, w.box.top);
                       return t;
                     };
                     return top(a) < top(b);
                   });
  return lines;
}

std::string join_words(std::vector<Word> words) {
  std::string out;
  for (const auto& line : group_lines(words)) {
    for (const Word& w : line) {
      if (w.text.empty()) continue;
      if (!out.empty()) out += ' ';
      out += w.text;
    }
  }
  return out;
}

void assign_words(std::vector<Cell>& cells, const std::vector<Word>& words) {
  for (Cell& c : cells) c.words.clear();
  for (const Word& w : words) {
    const double cx = w.box.center_x();
    const double cy = w.box.center_y();
    for (Cell& c : cells) {
      if (c.box.contains_point(cx, cy)) {
        c.words.push_back(w);
        break;
      }
    }
  }
  for (Cell& c : cells) {
    c.words = [&] {
      std::vector<Word> ordered;
      for (auto& line : group_lines(c.words))
        ordered.insert(ordered.end(), line.begin(), line.end());
      return ordered;
    }();
    c.content = join_words(c.words);
  }
}

}  // namespace tabgrid
