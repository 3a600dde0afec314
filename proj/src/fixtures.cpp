#include "tabgrid/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "tabgrid/errors.hpp"

namespace tabgrid {

namespace {

constexpr int kCharWidth = 6;
constexpr int kWordHeight = 10;
constexpr int kWordGap = 4;
constexpr int kRuleThickness = 2;
constexpr int kTableLeft = 80;
constexpr int kMinPageWidth = 1200;

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int text_width(const std::string& text) {
  const auto words = split_words(text);
  if (words.empty()) return 0;
  int w = 0;
  for (const auto& s : words) w += kCharWidth * static_cast<int>(s.size());
  return w + kWordGap * (static_cast<int>(words.size()) - 1);
}

const std::vector<std::string> kFiller{
    "lorem", "ipsum", "dolor", "sit", "amet", "consectetur", "adipiscing", "elit",
    "sed", "do", "eiusmod", "tempor", "incididunt", "ut", "labore", "et", "dolore",
    "magna", "aliqua", "enim", "minim", "veniam", "quis", "nostrud", "exercitation",
    "ullamco", "laboris", "nisi", "aliquip", "ex", "ea", "commodo", "consequat"};

const std::vector<std::string> kHeaderWords{
    "Method", "Accuracy", "Recall", "Samples", "Latency", "Dataset", "Score",
    "Model", "Baseline", "Runtime", "Memory", "Epochs", "Params", "Variant",
    "Region", "Volume", "Weight", "Status"};

const std::vector<std::string> kGroupWords{"Set", "Group", "Part", "Block"};

const std::vector<std::string> kStructures{
    "aryl amide", "benzamide", "hydroxamate", "thiol ester", "pyridyl urea",
    "indole", "quinoline", "biaryl"};

std::string random_token(Rng& rng) {
  switch (uniform(rng, 0, 3)) {
    case 0: return std::to_string(uniform(rng, 0, 999));
    case 1: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%d.%02d", uniform(rng, 0, 99), uniform(rng, 0, 99));
      return buf;
    }
    case 2: return pick(rng, kFiller);
    default: {
      std::string s(1, static_cast<char>('A' + uniform(rng, 0, 25)));
      return s + std::to_string(uniform(rng, 1, 99));
    }
  }
}

std::string random_cell_text(Rng& rng, int max_tokens) {
  std::string s = random_token(rng);
  const int extra = uniform(rng, 0, max_tokens - 1);
  for (int i = 0; i < extra; ++i) s += " " + random_token(rng);
  return s;
}

std::string real_value(Rng& rng) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%d.%03d", uniform(rng, 0, 9), uniform(rng, 0, 999));
  return buf;
}

// Changes one digit of `s`; the result stays within the same character class.
std::string bump_digit(const std::string& s, Rng& rng) {
  std::vector<std::size_t> digits;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] >= '0' && s[i] <= '9') digits.push_back(i);
  std::string out = s;
  const std::size_t at = pick(rng, digits);
  out[at] = static_cast<char>('0' + (out[at] - '0' + 1) % 10);
  return out;
}

struct TableContent {
  // bordered: header row (if any) is row 0 of `cells`
  std::vector<std::vector<std::string>> cells;
  std::vector<MergeSpec> merges;
  // booktabs
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> group_names;  // per level, per group
};

class PageBuilder {
 public:
  PageLayout layout;
  std::vector<int> ruling_of;  // logical ruling line of every separator

  int new_line() { return next_line_++; }
  int new_ruling() { return next_ruling_++; }

  std::vector<Word> place(int x, int y, const std::string& text) {
    std::vector<Word> out;
    const int line = new_line();
    for (const std::string& w : split_words(text)) {
      const int width = kCharWidth * static_cast<int>(w.size());
      Word word{{x, y, x + width, y + kWordHeight}, w, line};
      layout.words.push_back(word);
      out.push_back(word);
      x += width + kWordGap;
    }
    return out;
  }

  void rule(const BoundingBox& box, Orientation o, int ruling) {
    layout.separators.push_back({box, o});
    ruling_of.push_back(ruling);
  }

 private:
  int next_line_ = 0;
  int next_ruling_ = 0;
};

// Filler paragraphs give the page its typical word spacing.
int render_paragraphs(PageBuilder& pb, Rng& rng, int y) {
  for (int line = 0; line < 20; ++line) {
    std::string text;
    for (int k = 0; k < 12; ++k) text += (k ? " " : "") + pick(rng, kFiller);
    pb.place(kTableLeft - 20, y, text);
    y += 16;
  }
  return y;
}

Cell make_cell(int r0, int r1, int c0, int c1, const BoundingBox& box,
               std::vector<Word> words, std::string content) {
  Cell c;
  c.row_start = r0;
  c.row_end = r1;
  c.col_start = c0;
  c.col_end = c1;
  c.box = box;
  c.words = std::move(words);
  c.content = std::move(content);
  return c;
}

RecognizedTable render_bordered(PageBuilder& pb, Rng& rng, const TableContent& tc, int top) {
  const int nr = static_cast<int>(tc.cells.size());
  const int nc = static_cast<int>(tc.cells.front().size());

  std::vector<std::vector<int>> owner(nr, std::vector<int>(nc, -1));
  for (int m = 0; m < static_cast<int>(tc.merges.size()); ++m) {
    const MergeSpec& s = tc.merges[m];
    for (int r = s.row; r < s.row + s.row_span; ++r)
      for (int c = s.col; c < s.col + s.col_span; ++c) owner[r][c] = m;
  }
  auto same_cell = [&](int r0, int c0, int r1, int c1) {
    return owner[r0][c0] >= 0 && owner[r0][c0] == owner[r1][c1];
  };

  std::vector<int> width(nc, 60);
  std::vector<int> height(nr);
  for (int r = 0; r < nr; ++r) height[r] = uniform(rng, 44, 70);
  for (int c = 0; c < nc; ++c) {
    for (int r = 0; r < nr; ++r) {
      const bool spans_cols = owner[r][c] >= 0 && tc.merges[owner[r][c]].col_span > 1;
      if (!spans_cols) width[c] = std::max(width[c], text_width(tc.cells[r][c]) + 16);
    }
    width[c] += uniform(rng, 0, 24);
  }
  for (const MergeSpec& s : tc.merges) {
    int sum = 0;
    for (int c = s.col; c < s.col + s.col_span; ++c) sum += width[c];
    const int need = text_width(tc.cells[s.row][s.col]) + 16;
    if (need > sum) width[s.col + s.col_span - 1] += need - sum;
  }

  std::vector<int> X{kTableLeft};
  for (int w : width) X.push_back(X.back() + w);
  std::vector<int> Y{top};
  for (int h : height) Y.push_back(Y.back() + h);

  for (int i = 0; i <= nr; ++i) {
    const int id = pb.new_ruling();
    int c = 0;
    while (c < nc) {
      auto present = [&](int col) {
        return i == 0 || i == nr || !same_cell(i - 1, col, i, col);
      };
      if (!present(c)) {
        ++c;
        continue;
      }
      int e = c;
      while (e + 1 < nc && present(e + 1)) ++e;
      pb.rule({X[c], Y[i], X[e + 1] + kRuleThickness, Y[i] + kRuleThickness},
              Orientation::Horizontal, id);
      c = e + 1;
    }
  }
  for (int j = 0; j <= nc; ++j) {
    const int id = pb.new_ruling();
    int r = 0;
    while (r < nr) {
      auto present = [&](int row) {
        return j == 0 || j == nc || !same_cell(row, j - 1, row, j);
      };
      if (!present(r)) {
        ++r;
        continue;
      }
      int e = r;
      while (e + 1 < nr && present(e + 1)) ++e;
      pb.rule({X[j], Y[r], X[j] + kRuleThickness, Y[e + 1] + kRuleThickness},
              Orientation::Vertical, id);
      r = e + 1;
    }
  }

  RecognizedTable t;
  t.source = TableSource::SeparatorBased;
  t.n_rows = nr;
  t.n_cols = nc;
  t.region = {X.front() + 1, Y.front() + 1, X.back() + 1, Y.back() + 1};
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      int r1 = r;
      int c1 = c;
      if (owner[r][c] >= 0) {
        const MergeSpec& s = tc.merges[owner[r][c]];
        if (s.row != r || s.col != c) continue;
        r1 = r + s.row_span - 1;
        c1 = c + s.col_span - 1;
      }
      const BoundingBox box{X[c] + 1, Y[r] + 1, X[c1 + 1] + 1, Y[r1 + 1] + 1};
      const std::string& text = tc.cells[r][c];
      std::vector<Word> words;
      if (!text.empty())
        words = pb.place(X[c] + 8, (Y[r] + Y[r1 + 1]) / 2 - kWordHeight / 2 + 1, text);
      t.cells.push_back(make_cell(r, r1, c, c1, box, std::move(words), text));
    }
  }
  return t;
}

RecognizedTable render_booktabs(PageBuilder& pb, Rng& rng, const TableContent& tc,
                                const std::vector<std::vector<GroupSpec>>& levels,
                                std::vector<int> gaps, int top) {
  const int nc = static_cast<int>(tc.header.size());
  const int body = static_cast<int>(tc.cells.size());
  const int nl = static_cast<int>(levels.size());
  if (gaps.empty())
    for (int c = 0; c + 1 < nc; ++c) gaps.push_back(uniform(rng, 14, 40));

  std::vector<int> width(nc);
  for (int c = 0; c < nc; ++c) {
    width[c] = text_width(tc.header[c]);
    for (const auto& row : tc.cells) width[c] = std::max(width[c], text_width(row[c]));
  }
  std::vector<int> X{kTableLeft};
  for (int c = 0; c + 1 < nc; ++c) X.push_back(X.back() + width[c] + gaps[c]);
  const int left = kTableLeft - 6;
  const int right = X.back() + width.back() + 6;

  const int top_ruling = pb.new_ruling();
  pb.rule({left, top, right, top + kRuleThickness}, Orientation::Horizontal, top_ruling);
  std::vector<int> rows{top + kRuleThickness / 2};
  std::vector<std::vector<std::pair<int, std::vector<Word>>>> group_words(nl);
  int y = top + kRuleThickness;
  for (int l = 0; l < nl; ++l) {
    const int id = pb.new_ruling();
    for (std::size_t g = 0; g < levels[l].size(); ++g) {
      const GroupSpec& s = levels[l][g];
      const int x0 = X[s.first];
      const int x1 = X[s.last] + width[s.last];
      const std::string& name = tc.group_names[l][g];
      const int x = x0 + std::max(0, (x1 - x0 - text_width(name)) / 2);
      group_words[l].push_back({static_cast<int>(g), pb.place(x, y + 5, name)});
      pb.rule({x0, y + 18, x1, y + 18 + kRuleThickness}, Orientation::Horizontal, id);
    }
    rows.push_back(y + 18 + kRuleThickness / 2);
    y += 20;
  }
  std::vector<std::vector<Word>> header_words(nc);
  for (int c = 0; c < nc; ++c) header_words[c] = pb.place(X[c], y + 5, tc.header[c]);
  const int middle = y + 20;
  pb.rule({left, middle, right, middle + kRuleThickness}, Orientation::Horizontal,
          pb.new_ruling());
  rows.push_back(middle + kRuleThickness / 2);

  std::vector<std::vector<std::vector<Word>>> body_words(body);
  int text_top = middle + kRuleThickness + 6;
  for (int r = 0; r < body; ++r) {
    for (int c = 0; c < nc; ++c) body_words[r].push_back(pb.place(X[c], text_top, tc.cells[r][c]));
    if (r + 1 < body) rows.push_back((text_top + kWordHeight + text_top + 20) / 2);
    text_top += 20;
  }
  const int bottom = text_top - 20 + kWordHeight + 6;
  pb.rule({left, bottom, right, bottom + kRuleThickness}, Orientation::Horizontal,
          pb.new_ruling());
  rows.push_back(bottom + kRuleThickness / 2);

  std::vector<int> cols{left};
  for (int c = 0; c + 1 < nc; ++c) cols.push_back((X[c] + width[c] + X[c + 1]) / 2);
  cols.push_back(right);

  RecognizedTable t;
  t.source = TableSource::BookTabs;
  t.n_rows = static_cast<int>(rows.size()) - 1;
  t.n_cols = nc;
  t.header_row_count = nl + 1;
  t.region = {left, rows.front(), right, rows.back()};
  auto box = [&](int r, int c0, int c1) {
    return BoundingBox{cols[c0], rows[r], cols[c1 + 1], rows[r + 1]};
  };
  for (int l = 0; l < nl; ++l) {
    int c = 0;
    while (c < nc) {
      auto g = std::find_if(levels[l].begin(), levels[l].end(),
                            [c](const GroupSpec& s) { return s.first == c; });
      if (g != levels[l].end()) {
        const auto idx = static_cast<std::size_t>(g - levels[l].begin());
        t.cells.push_back(make_cell(l, l, g->first, g->last, box(l, g->first, g->last),
                                    group_words[l][idx].second, tc.group_names[l][idx]));
        c = g->last + 1;
      } else {
        t.cells.push_back(make_cell(l, l, c, c, box(l, c, c), {}, ""));
        ++c;
      }
    }
  }
  for (int c = 0; c < nc; ++c)
    t.cells.push_back(make_cell(nl, nl, c, c, box(nl, c, c), header_words[c], tc.header[c]));
  for (int r = 0; r < body; ++r)
    for (int c = 0; c < nc; ++c)
      t.cells.push_back(make_cell(nl + 1 + r, nl + 1 + r, c, c, box(nl + 1 + r, c, c),
                                  body_words[r][c], tc.cells[r][c]));
  return t;
}

// Every interior ruling line keeps at least one segment, otherwise the row or
// column it separates is not observable on the page.
bool lines_observable(int rows, int cols, const std::vector<MergeSpec>& merges) {
  std::vector<std::vector<int>> owner(rows, std::vector<int>(cols, -1));
  for (int m = 0; m < static_cast<int>(merges.size()); ++m) {
    const MergeSpec& s = merges[m];
    for (int r = s.row; r < s.row + s.row_span; ++r)
      for (int c = s.col; c < s.col + s.col_span; ++c) owner[r][c] = m;
  }
  for (int i = 1; i < rows; ++i) {
    bool any = false;
    for (int c = 0; c < cols; ++c)
      any = any || owner[i - 1][c] < 0 || owner[i - 1][c] != owner[i][c];
    if (!any) return false;
  }
  for (int j = 1; j < cols; ++j) {
    bool any = false;
    for (int r = 0; r < rows; ++r)
      any = any || owner[r][j - 1] < 0 || owner[r][j - 1] != owner[r][j];
    if (!any) return false;
  }
  return true;
}

std::vector<MergeSpec> random_merges(Rng& rng, int rows, int cols) {
  std::vector<std::vector<bool>> taken(rows, std::vector<bool>(cols, false));
  std::vector<MergeSpec> out;
  const int attempts = uniform(rng, 0, 3);
  for (int a = 0; a < attempts; ++a) {
    MergeSpec m;
    if (chance(rng, 0.5)) m.col_span = 2;
    else m.row_span = 2;
    if (rows - m.row_span < 0 || cols - m.col_span < 0) continue;
    m.row = uniform(rng, 0, rows - m.row_span);
    m.col = uniform(rng, 0, cols - m.col_span);
    bool free = true;
    for (int r = m.row; r < m.row + m.row_span; ++r)
      for (int c = m.col; c < m.col + m.col_span; ++c) free = free && !taken[r][c];
    if (!free) continue;
    out.push_back(m);
    if (!lines_observable(rows, cols, out)) {
      out.pop_back();
      continue;
    }
    out.pop_back();
    for (int r = m.row; r < m.row + m.row_span; ++r)
      for (int c = m.col; c < m.col + m.col_span; ++c) taken[r][c] = true;
    out.push_back(m);
  }
  return out;
}

std::vector<GroupSpec> random_groups(Rng& rng, int cols) {
  for (;;) {
    std::vector<GroupSpec> groups;
    int c = 0;
    while (c + 1 < cols) {
      if (chance(rng, 0.5)) {
        const int len = uniform(rng, 2, std::min(4, cols - c));
        groups.push_back({c, c + len - 1});
        c += len;
      } else {
        ++c;
      }
    }
    const bool covers_all = groups.size() == 1 && groups[0].first == 0 &&
                            groups[0].last == cols - 1;
    if (!groups.empty() && !covers_all) return groups;
  }
}

TableContent bordered_content(Rng& rng, const TableSpec& spec) {
  TableContent tc;
  tc.merges = spec.merges;
  tc.cells.assign(spec.rows, std::vector<std::string>(spec.cols));
  std::vector<std::vector<bool>> merged(spec.rows, std::vector<bool>(spec.cols, false));
  for (const MergeSpec& m : spec.merges) merged[m.row][m.col] = true;
  for (int r = 0; r < spec.rows; ++r)
    for (int c = 0; c < spec.cols; ++c) {
      if (merged[r][c]) tc.cells[r][c] = pick(rng, kHeaderWords);
      else if (!chance(rng, 0.1)) tc.cells[r][c] = random_cell_text(rng, 2);
    }
  return tc;
}

TableContent booktabs_content(Rng& rng, const TableSpec& spec) {
  TableContent tc;
  std::set<std::string> used;
  for (int c = 0; c < spec.cols; ++c) tc.header.push_back(pick(rng, kHeaderWords));
  for (std::size_t l = 0; l < spec.levels.size(); ++l) {
    tc.group_names.emplace_back();
    for (std::size_t g = 0; g < spec.levels[l].size(); ++g)
      tc.group_names.back().push_back(pick(rng, kGroupWords) + " " +
                                      std::string(1, static_cast<char>('A' + g)));
  }
  tc.cells.assign(spec.rows, std::vector<std::string>(spec.cols));
  for (auto& row : tc.cells)
    for (auto& cell : row) cell = random_cell_text(rng, 2);
  return tc;
}

constexpr const char* kCompound = "COMPOUND";
constexpr const char* kHdac6 = "HDAC6";

struct InterpretationTable {
  TableSpec spec;
  TableContent content;
  int compound_col = 0;
  int activity_col = 0;
};

InterpretationTable interpretation_table(Rng& rng, bool booktabs) {
  enum Col { Compound, Hdac6, Hdac1, Structure, Selectivity, Mw };
  std::vector<Col> order{Compound, Hdac6};
  std::vector<Col> distractors{Hdac1, Structure, Selectivity, Mw};
  std::shuffle(distractors.begin(), distractors.end(), rng);
  const int n_distractors = uniform(rng, 1, 3);
  order.insert(order.end(), distractors.begin(), distractors.begin() + n_distractors);
  std::shuffle(order.begin(), order.end(), rng);

  const int body = uniform(rng, 3, 8);
  InterpretationTable it;
  it.spec.kind = booktabs ? FixtureKind::BookTabs : FixtureKind::Bordered;
  it.spec.cols = static_cast<int>(order.size());
  it.spec.rows = booktabs ? body : body + 1;

  std::vector<std::string> titles;
  std::vector<std::vector<std::string>> values(body);
  std::set<int> ids;
  for (std::size_t k = 0; k < order.size(); ++k) {
    switch (order[k]) {
      case Compound:
        it.compound_col = static_cast<int>(k);
        titles.push_back(pick(rng, std::vector<std::string>{"Compound", "Cpd.", "Compd"}));
        break;
      case Hdac6:
        it.activity_col = static_cast<int>(k);
        titles.push_back(pick(rng, std::vector<std::string>{"HDAC6 IC50 (nM)", "HDAC6",
                                                            "HDAC 6 IC50"}));
        break;
      case Hdac1: titles.push_back("HDAC1 IC50 (nM)"); break;
      case Structure: titles.push_back("Structure"); break;
      case Selectivity: titles.push_back("Selectivity"); break;
      case Mw: titles.push_back("MW"); break;
    }
    for (int r = 0; r < body; ++r) {
      std::string v;
      switch (order[k]) {
        case Compound: {
          int id;
          do id = uniform(rng, 1, 99);
          while (!ids.insert(id).second);
          v = std::to_string(id);
          if (chance(rng, 0.5)) v += static_cast<char>('a' + uniform(rng, 0, 3));
          break;
        }
        case Hdac6:
        case Hdac1:
        case Selectivity: v = real_value(rng); break;
        case Structure: v = pick(rng, kStructures); break;
        case Mw: v = std::to_string(uniform(rng, 180, 650)); break;
      }
      values[r].push_back(v);
    }
  }
  if (booktabs) {
    it.content.header = titles;
    it.content.cells = values;
  } else {
    it.content.cells.push_back(titles);
    it.content.cells.insert(it.content.cells.end(), values.begin(), values.end());
  }
  return it;
}

void apply_jitter(PageBuilder& pb, int px, Rng& rng) {
  if (px <= 0) return;
  std::map<int, std::pair<int, int>> shift;
  PageLayout& l = pb.layout;
  for (std::size_t i = 0; i < l.separators.size(); ++i) {
    const int id = pb.ruling_of[i];
    if (!shift.count(id)) shift[id] = {uniform(rng, -px, px), uniform(rng, -px, px)};
    const auto [dx, dy] = shift[id];
    BoundingBox& b = l.separators[i].box;
    b = clamp_to({b.left + dx, b.top + dy, b.right + dx, b.bottom + dy}, l.page_width,
                 l.page_height);
    l.separators[i].orientation = classify_orientation(b);
  }
}

void validate_table(const TableSpec& t, std::size_t index, std::vector<std::string>& v) {
  const std::string who = "tables[" + std::to_string(index) + "]";
  if (t.rows < 1 || t.rows > 40) v.push_back(who + ": rows must lie in [1, 40]");
  if (t.cols < 1 || t.cols > 12) v.push_back(who + ": cols must lie in [1, 12]");
  if (t.kind == FixtureKind::Bordered) {
    if (!t.levels.empty() || !t.gaps.empty())
      v.push_back(who + ": levels and gaps apply to booktabs tables only");
    std::set<std::pair<int, int>> covered;
    for (std::size_t m = 0; m < t.merges.size(); ++m) {
      const MergeSpec& s = t.merges[m];
      const std::string mw = who + ".merges[" + std::to_string(m) + "]";
      if (s.row < 0 || s.col < 0 || s.row_span < 1 || s.col_span < 1 ||
          s.row + s.row_span > t.rows || s.col + s.col_span > t.cols) {
        v.push_back(mw + ": outside the grid");
        continue;
      }
      if (s.row_span * s.col_span < 2) v.push_back(mw + ": covers a single cell");
      for (int r = s.row; r < s.row + s.row_span; ++r)
        for (int c = s.col; c < s.col + s.col_span; ++c)
          if (!covered.insert({r, c}).second) v.push_back(mw + ": overlaps another merge");
    }
    if (v.empty() && !lines_observable(t.rows, t.cols, t.merges))
      v.push_back(who + ": merges remove an entire interior ruling line");
  } else {
    if (!t.merges.empty()) v.push_back(who + ": merges apply to bordered tables only");
    for (std::size_t l = 0; l < t.levels.size(); ++l) {
      std::set<int> seen;
      if (t.levels[l].empty()) v.push_back(who + ": header level without cmidrules");
      for (const GroupSpec& g : t.levels[l]) {
        if (g.first < 0 || g.last < g.first || g.last >= t.cols) {
          v.push_back(who + ": cmidrule columns out of range");
          continue;
        }
        if (g.first == 0 && g.last == t.cols - 1)
          v.push_back(who + ": a cmidrule may not span every column");
        for (int c = g.first; c <= g.last; ++c)
          if (!seen.insert(c).second) v.push_back(who + ": cmidrules overlap within a level");
      }
    }
    if (!t.gaps.empty()) {
      if (static_cast<int>(t.gaps.size()) != t.cols - 1)
        v.push_back(who + ": gaps needs cols - 1 entries");
      for (int g : t.gaps)
        if (g < 1 || g > 400) v.push_back(who + ": gaps must lie in [1, 400]");
    }
  }
}

TableSpec table_spec_from_json(const Json& j, std::size_t index, std::vector<std::string>& v) {
  const std::string who = "tables[" + std::to_string(index) + "]";
  TableSpec t;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bordered") t.kind = FixtureKind::Bordered;
    else if (kind == "booktabs") t.kind = FixtureKind::BookTabs;
    else v.push_back(who + ": kind must be \"bordered\" or \"booktabs\"");
    t.rows = j.at("rows").get<int>();
    t.cols = j.at("cols").get<int>();
    t.label = j.value("label", true);
    for (const Json& m : j.value("merges", Json::array()))
      t.merges.push_back({m.at("row").get<int>(), m.at("col").get<int>(),
                          m.value("row_span", 1), m.value("col_span", 1)});
    for (const Json& level : j.value("levels", Json::array())) {
      t.levels.emplace_back();
      for (const Json& g : level)
        t.levels.back().push_back({g.at(0).get<int>(), g.at(1).get<int>()});
    }
    t.gaps = j.value("gaps", std::vector<int>{});
  } catch (const Json::exception& e) {
    v.push_back(who + ": " + e.what());
  }
  return t;
}

}  // namespace

void validate(const FixtureSpec& spec) {
  std::vector<std::string> v;
  if (spec.file_id.empty() ||
      spec.file_id.find_first_of("/\\") != std::string::npos)
    v.push_back("file_id must be a non-empty name without path separators");
  if (spec.jitter_px < 0 || spec.jitter_px > 100) v.push_back("jitter_px must lie in [0, 100]");
  if (spec.random_bordered < 0 || spec.random_booktabs < 0 || spec.random_interpretation < 0)
    v.push_back("random table counts must be >= 0");
  for (std::size_t i = 0; i < spec.tables.size(); ++i) validate_table(spec.tables[i], i, v);
  try {
    spec.recognizer.validate();
  } catch (const ConfigError& e) {
    for (const auto& s : e.violations()) v.push_back("recognizer: " + s);
  }
  if (!v.empty()) throw ConfigError(std::move(v));
}

FixtureSpec fixture_spec_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError({"fixture spec must be a JSON object"});
  std::vector<std::string> v;
  FixtureSpec s;
  try {
    s.file_id = j.value("file_id", s.file_id);
    s.seed = j.value("seed", s.seed);
    s.jitter_px = j.value("jitter_px", s.jitter_px);
    s.corrupt = j.value("corrupt", s.corrupt);
    if (j.contains("random")) {
      const Json& r = j["random"];
      s.random_bordered = r.value("bordered", 0);
      s.random_booktabs = r.value("booktabs", 0);
      s.random_interpretation = r.value("interpretation", 0);
    }
  } catch (const Json::exception& e) {
    v.push_back(e.what());
  }
  if (j.contains("recognizer")) {
    try {
      s.recognizer = recognizer_config_from_json(j["recognizer"]);
    } catch (const ConfigError& e) {
      for (const auto& x : e.violations()) v.push_back("recognizer: " + x);
    }
  }
  if (j.contains("tables")) {
    if (!j["tables"].is_array()) v.push_back("tables must be an array");
    else
      for (std::size_t i = 0; i < j["tables"].size(); ++i)
        s.tables.push_back(table_spec_from_json(j["tables"][i], i, v));
  }
  if (!v.empty()) throw ConfigError(std::move(v));
  validate(s);
  return s;
}

std::vector<MeaningConfig> example_meanings() {
  MeaningConfig compound;
  compound.name = kCompound;
  compound.title_keywords = {"compound", "cpd", "compd"};
  compound.content_regex = R"(^\d+[a-z]?$)";
  compound.min_affinity = 0.6;
  MeaningConfig hdac;
  hdac.name = kHdac6;
  hdac.title_keywords = {"HDAC6", "HDAC6 IC50"};
  hdac.title_regex = R"(HDAC\s*6)";
  hdac.data_type = DataType::Real;
  hdac.min_affinity = 0.6;
  return {compound, hdac};
}

FixtureCorpus generate_fixtures(const FixtureSpec& spec) {
  validate(spec);
  FixtureCorpus corpus;
  corpus.file_id = spec.file_id;
  corpus.recognizer = spec.recognizer;
  corpus.meanings = example_meanings();

  Rng rng(spec.seed);
  Rng jitter_rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);

  struct Planned {
    TableSpec spec;
    std::optional<InterpretationTable> interp;
  };
  std::vector<Planned> plan;
  for (const TableSpec& t : spec.tables) plan.push_back({t, std::nullopt});
  for (int i = 0; i < spec.random_bordered; ++i) {
    TableSpec t;
    t.rows = uniform(rng, 2, 8);
    t.cols = uniform(rng, 2, 8);
    t.merges = random_merges(rng, t.rows, t.cols);
    plan.push_back({t, std::nullopt});
  }
  for (int i = 0; i < spec.random_booktabs; ++i) {
    TableSpec t;
    t.kind = FixtureKind::BookTabs;
    t.rows = uniform(rng, 2, 8);
    t.cols = uniform(rng, 2, 8);
    const int nl = t.cols < 3 ? 0 : uniform(rng, 0, 2);
    for (int l = 0; l < nl; ++l) t.levels.push_back(random_groups(rng, t.cols));
    plan.push_back({t, std::nullopt});
  }
  for (int i = 0; i < spec.random_interpretation; ++i) {
    InterpretationTable it = interpretation_table(rng, i % 2 == 1);
    plan.push_back({it.spec, it});
  }

  for (std::size_t p = 0; p < plan.size(); ++p) {
    const int page_nr = static_cast<int>(p) + 1;
    const TableSpec& ts = plan[p].spec;
    TableContent content = plan[p].interp ? plan[p].interp->content
                           : ts.kind == FixtureKind::Bordered ? bordered_content(rng, ts)
                                                              : booktabs_content(rng, ts);

    FixturePage page;
    std::optional<TupleSet> tuples;
    if (plan[p].interp) {
      const InterpretationTable& it = *plan[p].interp;
      TupleSet t{spec.file_id, page_nr, 0, {}};
      const auto& cells = content.cells;
      const int first_body = ts.kind == FixtureKind::Bordered ? 1 : 0;
      for (int r = first_body; r < static_cast<int>(cells.size()); ++r)
        t.tuples.push_back({r - first_body,
                            {{kCompound, cells[r][it.compound_col]},
                             {kHdac6, cells[r][it.activity_col]}}});
      tuples = t;
      if (spec.corrupt) {
        const int r = uniform(rng, first_body, static_cast<int>(cells.size()) - 1);
        const int c = chance(rng, 0.5) ? it.compound_col : it.activity_col;
        const std::string before = content.cells[r][c];
        content.cells[r][c] = bump_digit(before, rng);
        page.corrupted = "row " + std::to_string(r) + " col " + std::to_string(c) + ": " +
                         before + " -> " + content.cells[r][c];
      }
    }

    PageBuilder pb;
    int y = render_paragraphs(pb, rng, 40) + 30;
    if (ts.label) {
      pb.place(kTableLeft, y, "Table " + std::to_string(page_nr) + ": " +
                                  pick(rng, kFiller) + " " + pick(rng, kFiller));
    }
    const int top = y + kWordHeight + 15;
    RecognizedTable gt =
        ts.kind == FixtureKind::Bordered
            ? render_bordered(pb, rng, content, top)
            : render_booktabs(pb, rng, content, ts.levels, ts.gaps, top);
    gt.labeled = ts.label;

    int max_right = 0;
    int max_bottom = 0;
    for (const Word& w : pb.layout.words) {
      max_right = std::max(max_right, w.box.right);
      max_bottom = std::max(max_bottom, w.box.bottom);
    }
    for (const Separator& s : pb.layout.separators) {
      max_right = std::max(max_right, s.box.right);
      max_bottom = std::max(max_bottom, s.box.bottom);
    }
    pb.layout.page_width = std::max(kMinPageWidth, max_right + 60);
    pb.layout.page_height = max_bottom + 80;
    apply_jitter(pb, spec.jitter_px, jitter_rng);

    const bool needs_label = ts.kind == FixtureKind::Bordered
                                 ? spec.recognizer.require_labels_separator
                                 : spec.recognizer.require_labels_booktabs;
    page.layout = std::move(pb.layout);
    page.truth.file_id = spec.file_id;
    page.truth.page_nr = page_nr;
    page.truth.tables.push_back(std::move(gt));
    page.truth.expected_missed.push_back(needs_label && !ts.label);
    if (tuples) page.tuples.push_back(std::move(*tuples));
    corpus.pages.push_back(std::move(page));
  }
  return corpus;
}

void write_fixtures(const FixtureCorpus& corpus, const std::filesystem::path& out) {
  namespace fs = std::filesystem;
  for (const char* sub : {"layouts", "gt_recognition", "gt_interpretation"})
    fs::create_directories(out / sub);
  for (const FixturePage& p : corpus.pages) {
    const std::string name = layout_file_name(p.truth.file_id, p.truth.page_nr);
    write_json_file(out / "layouts" / name, to_json(p.layout));
    write_json_file(out / "gt_recognition" / name, to_json(p.truth));
    for (const TupleSet& t : p.tuples)
      write_json_file(out / "gt_interpretation" /
                          tuple_file_name(t.file_id, t.page_nr, t.table_idx),
                      to_json(t));
  }
  write_json_file(out / "recognizer.json", to_json(corpus.recognizer));
  write_json_file(out / "rules.json", to_json(corpus.meanings));
}

}  // namespace tabgrid
