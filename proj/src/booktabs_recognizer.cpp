#include "tabgrid/booktabs_recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tabgrid/errors.hpp"
#include "tabgrid/separator_recognizer.hpp"

namespace tabgrid {

namespace {

bool inside_x(const Separator& inner, const Separator& outer, int tol) {
  return inner.box.left >= outer.box.left - tol &&
         inner.box.right <= outer.box.right + tol;
}

std::vector<Word> words_centered_in(std::span<const Word> words,
                                    const BoundingBox& region) {
  std::vector<Word> out;
  for (const Word& w : words)
    if (region.contains_point(w.box.center_x(), w.box.center_y()))
      out.push_back(w);
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string describe(const BoundingBox& b) {
  std::ostringstream os;
  os << b;
  return os.str();
}

}  // namespace

BoundingBox RuleTriple::region() const {
  const int left = std::min({top.box.left, middle.box.left, bottom.box.left});
  const int right =
      std::max({top.box.right, middle.box.right, bottom.box.right});
  return {left, rule_y(top), right, rule_y(bottom)};
}

int alignment_tolerance(const Separator& a, const Separator& b) {
  const int w = std::max(a.box.width(), b.box.width());
  return std::max(5, static_cast<int>(std::lround(0.02 * w)));
}

bool rules_aligned(const Separator& a, const Separator& b) {
  const int tol = alignment_tolerance(a, b);
  return std::abs(a.box.left - b.box.left) <= tol &&
         std::abs(a.box.right - b.box.right) <= tol;
}

std::vector<RuleTriple> find_rule_triples(std::span<const Separator> horizontals,
                                          std::span<const Word> words,
                                          const RecognizerConfig& cfg) {
  std::vector<Separator> rules(horizontals.begin(), horizontals.end());
  std::stable_sort(rules.begin(), rules.end(),
                   [](const Separator& a, const Separator& b) {
                     return a.box.top < b.box.top;
                   });
  const std::size_t n = rules.size();
  std::vector<bool> used(n, false);
  std::vector<RuleTriple> triples;

  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    const Separator& top = rules[i];
    std::size_t j = i + 1;
    while (j < n && (used[j] || !rules_aligned(top, rules[j]))) ++j;
    if (j >= n) continue;
    std::size_t k = j + 1;
    while (k < n && (used[k] || !rules_aligned(top, rules[k]) ||
                     !rules_aligned(rules[j], rules[k])))
      ++k;
    if (k >= n) continue;

    RuleTriple t{top, rules[j], rules[k], {}, false};
    if (!(rule_y(t.top) < rule_y(t.middle) && rule_y(t.middle) < rule_y(t.bottom)))
      continue;
    const BoundingBox region = t.region();
    bool overlaps = false;
    for (const RuleTriple& prev : triples)
      if (intersection_area(prev.region(), region) > 0) overlaps = true;
    if (overlaps) continue;

    std::vector<std::size_t> inner;
    const int tol = alignment_tolerance(top, top);
    for (std::size_t q = i + 1; q < j; ++q) {
      if (used[q]) continue;
      const int y = rule_y(rules[q]);
      if (y > rule_y(t.top) && y < rule_y(t.middle) && inside_x(rules[q], top, tol)) {
        t.inner_rules.push_back(rules[q]);
        inner.push_back(q);
      }
    }
    const BoundingBox label_hull{region.left, top.box.top, region.right,
                                 t.bottom.box.bottom};
    t.labeled = assign_table_label(label_hull, words, cfg);
    used[i] = used[j] = used[k] = true;
    for (std::size_t q : inner) used[q] = true;
    if (cfg.require_labels_booktabs && !t.labeled) continue;
    triples.push_back(std::move(t));
  }
  return triples;
}

HeaderLevels group_inner_rules(const RuleTriple& triple) {
  std::vector<Separator> rules = triple.inner_rules;
  std::stable_sort(rules.begin(), rules.end(),
                   [](const Separator& a, const Separator& b) {
                     if (rule_y(a) != rule_y(b)) return rule_y(a) < rule_y(b);
                     return a.box.left < b.box.left;
                   });
  HeaderLevels out;
  std::size_t i = 0;
  while (i < rules.size()) {
    HeaderLevel level;
    const int anchor = rule_y(rules[i]);
    long sum = 0;
    while (i < rules.size() && rule_y(rules[i]) - anchor <= kBorderTolerancePx) {
      sum += rule_y(rules[i]);
      level.rules.push_back(rules[i]);
      ++i;
    }
    level.y = static_cast<int>(std::lround(static_cast<double>(sum) /
                                           static_cast<double>(level.rules.size())));
    std::sort(level.rules.begin(), level.rules.end(),
              [](const Separator& a, const Separator& b) {
                return a.box.left < b.box.left;
              });
    out.levels.push_back(std::move(level));
  }
  return out;
}

Profile horizontal_profile(std::span<const Word> words,
                           const BoundingBox& region) {
  Profile p{Orientation::Horizontal, region.top,
            std::vector<long>(static_cast<std::size_t>(std::max(0, region.height())), 0)};
  for (const Word& w : words) {
    const BoundingBox c = intersection(w.box, region);
    if (c.area() == 0) continue;
    for (int y = c.top; y < c.bottom; ++y) p.values[y - region.top] += c.width();
  }
  return p;
}

Profile vertical_profile(std::span<const Word> words, const BoundingBox& region) {
  Profile p{Orientation::Vertical, region.left,
            std::vector<long>(static_cast<std::size_t>(std::max(0, region.width())), 0)};
  for (const Word& w : words) {
    const BoundingBox c = intersection(w.box, region);
    if (c.area() == 0) continue;
    for (int x = c.left; x < c.right; ++x) p.values[x - region.left] += c.height();
  }
  return p;
}

std::vector<Interval> interior_gaps(const Profile& profile) {
  std::vector<Interval> gaps;
  const int n = static_cast<int>(profile.values.size());
  int i = 0;
  while (i < n) {
    if (profile.values[i] != 0) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && profile.values[j] == 0) ++j;
    if (i > 0 && j < n) gaps.push_back({i, j});
    i = j;
  }
  return gaps;
}

namespace {

bool all_zero(const Profile& p) {
  return std::all_of(p.values.begin(), p.values.end(),
                     [](long v) { return v == 0; });
}

}  // namespace

std::vector<int> segment_rows(const Profile& profile) {
  if (all_zero(profile)) throw EmptyBody("table body contains no text");
  std::vector<int> borders;
  for (const Interval& g : interior_gaps(profile))
    borders.push_back(profile.origin + (g.begin + g.end) / 2);
  return borders;
}

ColumnThreshold compute_column_threshold(const PageLayout& page,
                                         std::span<const Word> table_words,
                                         double gamma) {
  std::vector<double> units;
  for (const auto& line : group_lines(page.words)) {
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      const Word& a = line[i];
      const Word& b = line[i + 1];
      const double h = 0.5 * (a.box.height() + b.box.height());
      if (h <= 0.0) continue;
      const double gap = std::max(0, b.box.left - a.box.right);
      units.push_back(gap / h);
    }
  }
  if (units.empty())
    throw InsufficientContext("page has no horizontally adjacent word pairs");
  if (table_words.empty())
    throw InsufficientContext("table contains no words");

  ColumnThreshold t;
  t.gamma = gamma;
  t.d_page = median(std::move(units));
  double sum = 0.0;
  for (const Word& w : table_words) sum += w.box.height();
  t.h_table = sum / static_cast<double>(table_words.size());
  t.d_column = t.d_page * t.h_table * t.gamma;
  if (!(t.d_column > 0.0))
    throw InsufficientContext("column threshold is zero (touching words)");
  return t;
}

std::vector<int> segment_columns(std::span<const Word> projection_words,
                                 const BoundingBox& region, double d_column) {
  const Profile p = vertical_profile(projection_words, region);
  if (all_zero(p)) throw EmptyBody("no words to project for column detection");
  std::vector<int> borders;
  for (const Interval& g : interior_gaps(p))
    if (g.length() > d_column) borders.push_back(p.origin + (g.begin + g.end) / 2);
  return borders;
}

RecognizedTable build_booktabs_grid(const RuleTriple& triple,
                                    const HeaderLevels& levels,
                                    std::span<const int> body_row_borders,
                                    std::span<const int> col_borders,
                                    std::span<const Word> words) {
  const BoundingBox region = triple.region();

  std::vector<int> rows{rule_y(triple.top)};
  for (const HeaderLevel& l : levels.levels) rows.push_back(l.y);
  rows.push_back(rule_y(triple.middle));
  rows.insert(rows.end(), body_row_borders.begin(), body_row_borders.end());
  rows.push_back(rule_y(triple.bottom));

  std::vector<int> cols{region.left};
  cols.insert(cols.end(), col_borders.begin(), col_borders.end());
  cols.push_back(region.right);

  RecognizedTable t;
  t.source = TableSource::BookTabs;
  t.labeled = triple.labeled;
  t.region = region;
  t.n_rows = static_cast<int>(rows.size()) - 1;
  t.n_cols = static_cast<int>(cols.size()) - 1;
  t.header_row_count = levels.header_row_count();

  auto make_cell = [&](int r, int c0, int c1) {
    Cell cell;
    cell.row_start = cell.row_end = r;
    cell.col_start = c0;
    cell.col_end = c1;
    cell.box = {cols[c0], rows[r], cols[c1 + 1], rows[r + 1]};
    return cell;
  };

  for (int r = 0; r < t.n_rows; ++r) {
    // owner[c] = first column of the merged run containing column c
    std::vector<int> owner(static_cast<std::size_t>(t.n_cols));
    for (int c = 0; c < t.n_cols; ++c) owner[c] = c;
    if (r < static_cast<int>(levels.levels.size())) {
      for (const Separator& rule : levels.levels[r].rules) {
        int first = -1;
        int last = -1;
        for (int c = 0; c < t.n_cols; ++c) {
          const int overlap = std::min(cols[c + 1], rule.box.right) -
                              std::max(cols[c], rule.box.left);
          if (overlap > 0) {
            if (first < 0) first = c;
            last = c;
          }
        }
        if (first < 0) continue;
        const int root = owner[first];
        for (int c = first; c <= last; ++c) {
          const int old = owner[c];
          for (int q = 0; q < t.n_cols; ++q)
            if (owner[q] == old) owner[q] = root;
        }
      }
    }
    int c = 0;
    while (c < t.n_cols) {
      int e = c;
      while (e + 1 < t.n_cols && owner[e + 1] == owner[c]) ++e;
      t.cells.push_back(make_cell(r, c, e));
      c = e + 1;
    }
  }
  assign_words(t.cells, {words.begin(), words.end()});
  return t;
}

std::vector<RecognizedTable> detect_booktabs_tables(
    const PageLayout& page, const RecognizerConfig& cfg,
    std::vector<std::string>& diagnostics) {
  std::vector<Separator> horizontals;
  for (const Separator& s : page.separators)
    if (s.orientation == Orientation::Horizontal) horizontals.push_back(s);

  std::vector<RecognizedTable> tables;
  for (const RuleTriple& triple : find_rule_triples(horizontals, page.words, cfg)) {
    const BoundingBox region = triple.region();
    try {
      const HeaderLevels levels = group_inner_rules(triple);
      const BoundingBox body{region.left, triple.middle.box.bottom, region.right,
                             triple.bottom.box.top};
      if (body.height() <= 0) throw EmptyBody("middle and bottom rule touch");
      const std::vector<Word> body_words = words_centered_in(page.words, body);
      const std::vector<int> body_rows =
          segment_rows(horizontal_profile(body_words, body));

      const int band_top = levels.levels.empty() ? triple.top.box.bottom
                                                 : levels.levels.back().y;
      const BoundingBox lowest_header{region.left, band_top, region.right,
                                      triple.middle.box.top};
      std::vector<Word> projection = body_words;
      if (lowest_header.height() > 0) {
        const auto header_words = words_centered_in(page.words, lowest_header);
        projection.insert(projection.end(), header_words.begin(), header_words.end());
      }
      const std::vector<Word> table_words = words_centered_in(page.words, region);
      const ColumnThreshold threshold =
          compute_column_threshold(page, table_words, cfg.gamma);
      const BoundingBox projection_region{region.left, band_top, region.right,
                                          triple.bottom.box.top};
      const std::vector<int> cols =
          segment_columns(projection, projection_region, threshold.d_column);
      tables.push_back(
          build_booktabs_grid(triple, levels, body_rows, cols, table_words));
    } catch (const Error& e) {
      diagnostics.push_back("booktabs candidate at " + describe(region) +
                            " skipped: " + e.what());
    }
  }
  return tables;
}

}  // namespace tabgrid
