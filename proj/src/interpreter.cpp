#include "tabgrid/interpreter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

#include "tabgrid/errors.hpp"
#include "tabgrid/matching.hpp"

namespace tabgrid {

namespace {

// Decodes UTF-8; malformed sequences yield U+FFFD per offending byte.
std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool ok = len > 0 && i + len <= s.size();
    for (int k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back(U'\uFFFD');
      ++i;
      continue;
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(len);
  }
  return out;
}

std::size_t edit_distance(const std::u32string& a, const std::u32string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::regex compile(const std::string& pattern) {
  return std::regex(pattern, std::regex::ECMAScript);
}

}  // namespace

std::optional<DataType> parse_data_type(std::string_view name) {
  std::string n(name);
  for (char& c : n) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (n == "integer" || n == "int") return DataType::Integer;
  if (n == "real" || n == "float" || n == "number") return DataType::Real;
  if (n == "date") return DataType::Date;
  if (n == "text" || n == "string") return DataType::Text;
  return std::nullopt;
}

std::string_view to_string(DataType t) {
  switch (t) {
    case DataType::Integer: return "integer";
    case DataType::Real: return "real";
    case DataType::Date: return "date";
    case DataType::Text: return "text";
  }
  return "text";
}

std::vector<Meaning> compile_meanings(const std::vector<MeaningConfig>& configs) {
  std::vector<std::string> v;
  std::vector<Meaning> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const MeaningConfig& c = configs[i];
    const std::string who =
        "meaning #" + std::to_string(i) + (c.name.empty() ? "" : " (" + c.name + ")");
    Meaning m{c, std::nullopt, std::nullopt};
    if (c.name.empty()) v.push_back(who + ": name is empty");
    else if (!names.insert(c.name).second) v.push_back(who + ": duplicate name");
    if (!std::isfinite(c.w_title) || c.w_title < 0.0)
      v.push_back(who + ": w_title must be a finite value >= 0");
    if (!std::isfinite(c.w_content) || c.w_content < 0.0)
      v.push_back(who + ": w_content must be a finite value >= 0");
    if (!(c.w_title + c.w_content > 0.0))
      v.push_back(who + ": the sum of weights must be positive");
    if (!(c.min_affinity >= 0.0 && c.min_affinity <= 1.0))
      v.push_back(who + ": min_affinity must lie in [0,1]");
    if (c.title_keywords.empty() && !c.title_regex && !c.content_regex && !c.data_type)
      v.push_back(who + ": defines no rule");
    for (const auto& k : c.title_keywords)
      if (normalize_text(k).empty()) v.push_back(who + ": empty title keyword");
    if (c.title_regex) {
      try {
        m.title_re = compile(*c.title_regex);
      } catch (const std::regex_error& e) {
        v.push_back(who + ": title_regex does not compile: " + e.what());
      }
    }
    if (c.content_regex) {
      try {
        m.content_re = compile(*c.content_regex);
      } catch (const std::regex_error& e) {
        v.push_back(who + ": content_regex does not compile: " + e.what());
      }
    }
    out.push_back(std::move(m));
  }
  if (!v.empty()) throw ConfigError(std::move(v));
  return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return edit_distance(decode_utf8(a), decode_utf8(b));
}

std::string normalize_text(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(c < 0x80 ? std::tolower(c) : c);
  }
  return out;
}

double fuzzy_similarity(std::string_view a, std::string_view b) {
  const std::u32string ua = decode_utf8(normalize_text(a));
  const std::u32string ub = decode_utf8(normalize_text(b));
  const std::size_t longest = std::max(ua.size(), ub.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(ua, ub)) /
                   static_cast<double>(longest);
}

double title_keyword_score(std::string_view title,
                           std::span<const std::string> keywords) {
  if (keywords.empty())
    throw std::invalid_argument("title_keyword_score needs at least one keyword");
  double best = 0.0;
  for (const std::string& k : keywords) best = std::max(best, fuzzy_similarity(title, k));
  return best;
}

double regex_score(const std::string& text, const std::regex& pattern) {
  return std::regex_search(text, pattern) ? 1.0 : 0.0;
}

double regex_score(const std::string& text, const std::string& pattern) {
  try {
    return regex_score(text, compile(pattern));
  } catch (const std::regex_error& e) {
    throw ConfigError({"pattern '" + pattern + "' does not compile: " + e.what()});
  }
}

double column_content_score(std::span<const std::string> cells,
                            const std::regex& pattern) {
  if (cells.empty()) return 0.0;
  double sum = 0.0;
  for (const std::string& c : cells) sum += regex_score(trim(c), pattern);
  return sum / static_cast<double>(cells.size());
}

const std::regex& builtin_pattern(DataType t) {
  static const std::regex integer(R"(^[+-]?\d+$)");
  static const std::regex real(R"(^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$)");
  static const std::regex date(
      R"(^\d{4}-\d{2}-\d{2}$|^\d{1,2}[./-]\d{1,2}[./-]\d{2,4}$)");
  static const std::regex text(R"(^.+$)");
  switch (t) {
    case DataType::Integer: return integer;
    case DataType::Real: return real;
    case DataType::Date: return date;
    case DataType::Text: return text;
  }
  return text;
}

double data_type_score(std::span<const std::string> cells, DataType t) {
  return column_content_score(cells, builtin_pattern(t));
}

double combine_affinity(const AffinityScores& s, double w_content,
                        double w_title) {
  const double content = std::max(s.s_content_regex, s.s_data_type);
  const double title = std::max(s.s_title_regex, s.s_title_keyword);
  return (w_content * content + w_title * title) / (w_content + w_title);
}

AffinityScores affinity(const ColumnView& column, const Meaning& m) {
  AffinityScores s;
  const MeaningConfig& c = m.config;
  if (!c.title_keywords.empty())
    s.s_title_keyword = title_keyword_score(column.title, c.title_keywords);
  if (m.title_re) s.s_title_regex = regex_score(column.title, *m.title_re);
  if (m.content_re) s.s_content_regex = column_content_score(column.body_cells, *m.content_re);
  if (c.data_type) s.s_data_type = data_type_score(column.body_cells, *c.data_type);
  s.combined = combine_affinity(s, c.w_content, c.w_title);
  return s;
}

int header_rows(const RecognizedTable& table) {
  if (table.source == TableSource::BookTabs)
    return std::min(table.header_row_count, table.n_rows);
  return std::min(1, table.n_rows);
}

std::vector<ColumnView> column_views(const RecognizedTable& table) {
  const int h = header_rows(table);
  std::vector<ColumnView> views;
  for (int c = 0; c < table.n_cols; ++c) {
    ColumnView v;
    v.index = c;
    const Cell* last = nullptr;
    for (int r = 0; r < h; ++r) {
      const Cell* cell = table.cell_at(r, c);
      if (cell == nullptr || cell == last) continue;
      last = cell;
      if (cell->content.empty()) continue;
      if (!v.title.empty()) v.title += ' ';
      v.title += cell->content;
    }
    for (int r = h; r < table.n_rows; ++r) {
      const Cell* cell = table.cell_at(r, c);
      v.body_cells.push_back(cell != nullptr && cell->row_start >= h ? cell->content
                                                                     : std::string{});
    }
    views.push_back(std::move(v));
  }
  return views;
}

TupleSet interpret_table(const RecognizedTable& table,
                         std::span<const Meaning> meanings, std::string file_id,
                         int page_nr, int table_idx) {
  TupleSet out{std::move(file_id), page_nr, table_idx, {}};
  if (meanings.empty()) return out;
  const std::vector<ColumnView> columns = column_views(table);

  WeightedBipartiteGraph g;
  g.n_left = static_cast<int>(meanings.size());
  g.n_right = static_cast<int>(columns.size());
  for (int m = 0; m < g.n_left; ++m) {
    for (int c = 0; c < g.n_right; ++c) {
      const double s = affinity(columns[c], meanings[m]).combined;
      if (s < meanings[m].config.min_affinity) continue;
      g.edges.push_back({m, c, s});
    }
  }
  const Matching matching = max_weight_matching(g);
  if (matching.pairs.empty()) return out;

  const int body_rows = table.n_rows - header_rows(table);
  for (int i = 0; i < body_rows; ++i) {
    Tuple t;
    t.row_index = i;
    for (const auto& [m, c] : matching.pairs)
      t.values[meanings[m].config.name] = columns[c].body_cells[i];
    out.tuples.push_back(std::move(t));
  }
  return out;
}

}  // namespace tabgrid
