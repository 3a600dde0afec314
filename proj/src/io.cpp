#include "tabgrid/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tabgrid/errors.hpp"

namespace tabgrid {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

int get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < -(1LL << 30) || v > (1LL << 30)) fail(where, "integer out of range");
  return static_cast<int>(v);
}

BoundingBox get_box(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) fail(where, "expected [left, top, right, bottom]");
  BoundingBox b{get_int(j[0], where + "[0]"), get_int(j[1], where + "[1]"),
                get_int(j[2], where + "[2]"), get_int(j[3], where + "[3]")};
  if (!b.valid()) fail(where, "requires left <= right and top <= bottom");
  return b;
}

Json box_json(const BoundingBox& b) { return Json::array({b.left, b.top, b.right, b.bottom}); }

bool has_control_chars(const std::string& s) {
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x20 || c == 0x7F) return true;
  }
  return false;
}

Word word_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  Word w;
  if (!j.contains("box")) fail(where, "missing box");
  w.box = get_box(j["box"], where + ".box");
  if (j.contains("text") && !j["text"].is_null()) {
    if (!j["text"].is_string()) fail(where + ".text", "expected a string");
    w.text = j["text"].get<std::string>();
    if (has_control_chars(w.text)) fail(where + ".text", "contains control characters");
  }
  if (j.contains("line_id") && !j["line_id"].is_null())
    w.line_id = get_int(j["line_id"], where + ".line_id");
  return w;
}

Json word_json(const Word& w) {
  Json j{{"box", box_json(w.box)}, {"text", w.text}};
  j["line_id"] = w.line_id ? Json(*w.line_id) : Json(nullptr);
  return j;
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing ") + key);
  return j[key];
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback, std::vector<std::string>& errors) {
  if (!j.contains(key)) return fallback;
  try {
    return j[key].get<T>();
  } catch (const Json::exception&) {
    errors.push_back(std::string(key) + ": wrong type");
    return fallback;
  }
}

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::optional<int> parse_number(const std::string& s) {
  if (!all_digits(s) || s.size() > 9) return std::nullopt;
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::optional<int> parse_prefixed(const std::string& s, const std::string& prefix) {
  if (auto v = parse_number(s)) return v;
  if (s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0)
    return parse_number(s.substr(prefix.size()));
  return std::nullopt;
}

std::string strip_json_ext(const std::string& name) {
  const std::string ext = ".json";
  if (name.size() <= ext.size() || name.compare(name.size() - ext.size(), ext.size(), ext) != 0)
    return {};
  return name.substr(0, name.size() - ext.size());
}

}  // namespace

PageLayout layout_from_json(const Json& j) {
  if (!j.is_object()) fail("layout", "expected a top-level object");
  PageLayout p;
  p.page_width = get_int(require(j, "page_width", "layout"), "page_width");
  p.page_height = get_int(require(j, "page_height", "layout"), "page_height");
  if (p.page_width <= 0 || p.page_height <= 0) fail("layout", "page size must be positive");

  auto array_of = [&](const char* key) -> const Json& {
    static const Json empty = Json::array();
    if (!j.contains(key)) return empty;
    if (!j[key].is_array()) fail(key, "expected an array");
    return j[key];
  };

  const Json& words = array_of("words");
  for (std::size_t i = 0; i < words.size(); ++i) {
    Word w = word_from_json(words[i], "words[" + std::to_string(i) + "]");
    w.box = clamp_to(w.box, p.page_width, p.page_height);
    p.words.push_back(std::move(w));
  }

  const Json& seps = array_of("separators");
  for (std::size_t i = 0; i < seps.size(); ++i) {
    const std::string where = "separators[" + std::to_string(i) + "]";
    if (!seps[i].is_object()) fail(where, "expected an object");
    Separator s;
    s.box = clamp_to(get_box(require(seps[i], "box", where), where + ".box"),
                     p.page_width, p.page_height);
    if (seps[i].contains("orientation") && !seps[i]["orientation"].is_null()) {
      const Json& o = seps[i]["orientation"];
      if (o == "h") s.orientation = Orientation::Horizontal;
      else if (o == "v") s.orientation = Orientation::Vertical;
      else fail(where + ".orientation", "expected \"h\" or \"v\"");
      if (!orientation_consistent(s))
        fail(where, "orientation contradicts the box aspect ratio");
    } else {
      s.orientation = classify_orientation(s.box);
    }
    p.separators.push_back(s);
  }

  const Json& regions = array_of("non_text_regions");
  for (std::size_t i = 0; i < regions.size(); ++i)
    p.non_text_regions.push_back(
        clamp_to(get_box(regions[i], "non_text_regions[" + std::to_string(i) + "]"),
                 p.page_width, p.page_height));
  return p;
}

Json to_json(const PageLayout& layout) {
  Json words = Json::array();
  for (const Word& w : layout.words) words.push_back(word_json(w));
  Json seps = Json::array();
  for (const Separator& s : layout.separators)
    seps.push_back({{"box", box_json(s.box)},
                    {"orientation", s.orientation == Orientation::Horizontal ? "h" : "v"}});
  Json regions = Json::array();
  for (const BoundingBox& b : layout.non_text_regions) regions.push_back(box_json(b));
  return {{"page_width", layout.page_width},
          {"page_height", layout.page_height},
          {"words", words},
          {"separators", seps},
          {"non_text_regions", regions}};
}

RecognizerConfig recognizer_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError({"recognizer config must be a JSON object"});
  std::vector<std::string> errors;
  RecognizerConfig c;
  c.gamma = get_or(j, "gamma", c.gamma, errors);
  c.require_labels_booktabs = get_or(j, "require_labels_booktabs", c.require_labels_booktabs, errors);
  c.require_labels_separator = get_or(j, "require_labels_separator", c.require_labels_separator, errors);
  c.label_keywords = get_or(j, "label_keywords", c.label_keywords, errors);
  c.separator_expand_px = get_or(j, "separator_expand_px", c.separator_expand_px, errors);
  c.label_search_margin_px = get_or(j, "label_search_margin_px", c.label_search_margin_px, errors);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  c.validate();
  return c;
}

Json to_json(const RecognizerConfig& c) {
  return {{"gamma", c.gamma},
          {"require_labels_booktabs", c.require_labels_booktabs},
          {"require_labels_separator", c.require_labels_separator},
          {"label_keywords", c.label_keywords},
          {"separator_expand_px", c.separator_expand_px},
          {"label_search_margin_px", c.label_search_margin_px}};
}

EvalConfig eval_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError({"eval config must be a JSON object"});
  std::vector<std::string> errors;
  EvalConfig c;
  c.iou_min = get_or(j, "iou_min", c.iou_min, errors);
  c.cell_iou_thresholds = get_or(j, "cell_iou_thresholds", c.cell_iou_thresholds, errors);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  c.validate();
  return c;
}

std::string to_string(TableSource s) {
  return s == TableSource::BookTabs ? "booktabs" : "separator";
}

std::string to_string(PageOrientation o) {
  return o == PageOrientation::Vertical ? "vertical" : "standard";
}

std::optional<PageOrientation> parse_orientation(const std::string& s) {
  if (s == "standard") return PageOrientation::Standard;
  if (s == "vertical") return PageOrientation::Vertical;
  return std::nullopt;
}

Json to_json(const RecognizedTable& t) {
  Json cells = Json::array();
  for (const Cell& c : t.cells) {
    Json words = Json::array();
    for (const Word& w : c.words) words.push_back(word_json(w));
    cells.push_back({{"box", box_json(c.box)},
                     {"rows", {c.row_start, c.row_end}},
                     {"cols", {c.col_start, c.col_end}},
                     {"content", c.content},
                     {"words", words}});
  }
  return {{"region", box_json(t.region)},
          {"n_rows", t.n_rows},
          {"n_cols", t.n_cols},
          {"labeled", t.labeled},
          {"source", to_string(t.source)},
          {"header_row_count", t.header_row_count},
          {"cells", cells}};
}

RecognizedTable table_from_json(const Json& j) {
  const std::string where = "table";
  RecognizedTable t;
  t.region = get_box(require(j, "region", where), "table.region");
  t.n_rows = get_int(require(j, "n_rows", where), "table.n_rows");
  t.n_cols = get_int(require(j, "n_cols", where), "table.n_cols");
  if (j.contains("labeled")) {
    if (!j["labeled"].is_boolean()) fail("table.labeled", "expected a boolean");
    t.labeled = j["labeled"].get<bool>();
  }
  if (j.contains("source")) {
    const Json& s = j["source"];
    if (s == "booktabs") t.source = TableSource::BookTabs;
    else if (s == "separator") t.source = TableSource::SeparatorBased;
    else fail("table.source", "expected \"separator\" or \"booktabs\"");
  }
  if (j.contains("header_row_count"))
    t.header_row_count = get_int(j["header_row_count"], "table.header_row_count");
  const Json& cells = require(j, "cells", where);
  if (!cells.is_array()) fail("table.cells", "expected an array");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string cw = "table.cells[" + std::to_string(i) + "]";
    const Json& cj = cells[i];
    Cell c;
    c.box = get_box(require(cj, "box", cw), cw + ".box");
    const Json& rows = require(cj, "rows", cw);
    const Json& cols = require(cj, "cols", cw);
    if (!rows.is_array() || rows.size() != 2 || !cols.is_array() || cols.size() != 2)
      fail(cw, "rows/cols must be [start, end]");
    c.row_start = get_int(rows[0], cw + ".rows[0]");
    c.row_end = get_int(rows[1], cw + ".rows[1]");
    c.col_start = get_int(cols[0], cw + ".cols[0]");
    c.col_end = get_int(cols[1], cw + ".cols[1]");
    if (cj.contains("content")) {
      if (!cj["content"].is_string()) fail(cw + ".content", "expected a string");
      c.content = cj["content"].get<std::string>();
    }
    if (cj.contains("words")) {
      if (!cj["words"].is_array()) fail(cw + ".words", "expected an array");
      for (std::size_t k = 0; k < cj["words"].size(); ++k)
        c.words.push_back(word_from_json(cj["words"][k], cw + ".words[" + std::to_string(k) + "]"));
    }
    t.cells.push_back(std::move(c));
  }
  return t;
}

Json to_json(const PageTables& p) {
  Json tables = Json::array();
  for (std::size_t i = 0; i < p.tables.size(); ++i) {
    Json t = to_json(p.tables[i]);
    if (i < p.expected_missed.size() && p.expected_missed[i]) t["expected_missed"] = true;
    tables.push_back(std::move(t));
  }
  return {{"file_id", p.file_id},
          {"page_nr", p.page_nr},
          {"orientation", to_string(p.orientation)},
          {"tables", tables},
          {"diagnostics", p.diagnostics}};
}

PageTables page_tables_from_json(const Json& j) {
  if (!j.is_object()) fail("page", "expected a top-level object");
  PageTables p;
  if (j.contains("file_id")) {
    if (!j["file_id"].is_string()) fail("file_id", "expected a string");
    p.file_id = j["file_id"].get<std::string>();
  }
  if (j.contains("page_nr")) p.page_nr = get_int(j["page_nr"], "page_nr");
  if (j.contains("orientation")) {
    const auto o = j["orientation"].is_string()
                       ? parse_orientation(j["orientation"].get<std::string>())
                       : std::nullopt;
    if (!o) fail("orientation", "expected \"standard\" or \"vertical\"");
    p.orientation = *o;
  }
  const Json& tables = require(j, "tables", "page");
  if (!tables.is_array()) fail("tables", "expected an array");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    try {
      p.tables.push_back(table_from_json(tables[i]));
    } catch (const InputError& e) {
      throw InputError("tables[" + std::to_string(i) + "]." + e.what());
    }
    p.expected_missed.push_back(tables[i].value("expected_missed", false));
  }
  if (j.contains("diagnostics") && j["diagnostics"].is_array())
    for (const Json& d : j["diagnostics"])
      if (d.is_string()) p.diagnostics.push_back(d.get<std::string>());
  return p;
}

std::vector<MeaningConfig> meanings_from_json(const Json& j) {
  std::vector<std::string> errors;
  std::vector<MeaningConfig> out;
  if (!j.is_array()) throw ConfigError({"rules config must be a JSON array of meanings"});
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string who = "meaning #" + std::to_string(i);
    const Json& m = j[i];
    if (!m.is_object()) {
      errors.push_back(who + ": expected an object");
      continue;
    }
    MeaningConfig c;
    std::vector<std::string> local;
    if (!m.contains("name") || !m["name"].is_string()) local.push_back("name: missing or not a string");
    else c.name = m["name"].get<std::string>();
    c.title_keywords = get_or(m, "title_keywords", c.title_keywords, local);
    if (m.contains("title_regex") && !m["title_regex"].is_null())
      c.title_regex = get_or(m, "title_regex", std::string{}, local);
    if (m.contains("content_regex") && !m["content_regex"].is_null())
      c.content_regex = get_or(m, "content_regex", std::string{}, local);
    if (m.contains("data_type") && !m["data_type"].is_null()) {
      const auto name = get_or(m, "data_type", std::string{}, local);
      c.data_type = parse_data_type(name);
      if (!c.data_type) local.push_back("data_type: unknown type '" + name + "'");
    }
    for (const char* key : {"w_title", "w_content", "min_affinity"})
      if (!m.contains(key)) local.push_back(std::string(key) + ": missing");
    c.w_title = get_or(m, "w_title", c.w_title, local);
    c.w_content = get_or(m, "w_content", c.w_content, local);
    c.min_affinity = get_or(m, "min_affinity", c.min_affinity, local);
    for (const auto& e : local) errors.push_back(who + ": " + e);
    out.push_back(std::move(c));
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return out;
}

Json to_json(const std::vector<MeaningConfig>& meanings) {
  Json arr = Json::array();
  for (const MeaningConfig& m : meanings) {
    Json j{{"name", m.name},
           {"w_title", m.w_title},
           {"w_content", m.w_content},
           {"min_affinity", m.min_affinity}};
    if (!m.title_keywords.empty()) j["title_keywords"] = m.title_keywords;
    if (m.title_regex) j["title_regex"] = *m.title_regex;
    if (m.content_regex) j["content_regex"] = *m.content_regex;
    if (m.data_type) j["data_type"] = std::string(to_string(*m.data_type));
    arr.push_back(std::move(j));
  }
  return arr;
}

Json to_json(const TupleSet& t) {
  Json tuples = Json::array();
  for (const Tuple& tu : t.tuples) tuples.push_back({{"row", tu.row_index}, {"values", tu.values}});
  return {{"file_id", t.file_id},
          {"page_nr", t.page_nr},
          {"table_idx", t.table_idx},
          {"tuples", tuples}};
}

TupleSet tuple_set_from_json(const Json& j) {
  if (!j.is_object()) fail("tuple set", "expected a top-level object");
  TupleSet t;
  const Json& id = require(j, "file_id", "tuple set");
  if (!id.is_string()) fail("file_id", "expected a string");
  t.file_id = id.get<std::string>();
  t.page_nr = get_int(require(j, "page_nr", "tuple set"), "page_nr");
  t.table_idx = get_int(require(j, "table_idx", "tuple set"), "table_idx");
  if (t.page_nr < 0 || t.table_idx < 0) fail("tuple set", "page_nr and table_idx must be >= 0");
  const Json& tuples = require(j, "tuples", "tuple set");
  if (!tuples.is_array()) fail("tuples", "expected an array");
  int last_row = -1;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const std::string where = "tuples[" + std::to_string(i) + "]";
    Tuple tu;
    tu.row_index = get_int(require(tuples[i], "row", where), where + ".row");
    if (tu.row_index <= last_row) fail(where + ".row", "row indices must be strictly increasing");
    last_row = tu.row_index;
    const Json& values = require(tuples[i], "values", where);
    if (!values.is_object()) fail(where + ".values", "expected an object");
    for (const auto& [k, v] : values.items()) {
      if (!v.is_string()) fail(where + ".values." + k, "expected a string");
      tu.values[k] = v.get<std::string>();
    }
    t.tuples.push_back(std::move(tu));
  }
  return t;
}

std::string layout_file_name(const std::string& file_id, int page_nr) {
  return file_id + "_page" + std::to_string(page_nr) + ".json";
}

std::optional<PageKey> parse_layout_file_name(const std::string& name) {
  const std::string stem = strip_json_ext(name);
  const auto pos = stem.rfind("_page");
  if (stem.empty() || pos == std::string::npos || pos == 0) return std::nullopt;
  const auto nr = parse_number(stem.substr(pos + 5));
  if (!nr) return std::nullopt;
  return PageKey{stem.substr(0, pos), *nr};
}

std::string tuple_file_name(const std::string& file_id, int page_nr, int table_idx) {
  return file_id + "_" + std::to_string(page_nr) + "_" + std::to_string(table_idx) + ".json";
}

std::optional<TableKey> parse_tuple_file_name(const std::string& name) {
  const std::string stem = strip_json_ext(name);
  const auto last = stem.rfind('_');
  if (stem.empty() || last == std::string::npos || last == 0) return std::nullopt;
  const auto mid = stem.rfind('_', last - 1);
  if (mid == std::string::npos || mid == 0) return std::nullopt;
  const auto page = parse_prefixed(stem.substr(mid + 1, last - mid - 1), "page");
  const auto idx = parse_prefixed(stem.substr(last + 1), "table");
  if (!page || !idx) return std::nullopt;
  return TableKey{stem.substr(0, mid), *page, *idx};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": malformed JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(path.string() + ": cannot write");
  out << j.dump(2) << '\n';
  if (!out) throw Error(path.string() + ": write failed");
}

}  // namespace tabgrid
