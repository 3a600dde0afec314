#pragma once

#include <map>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tabgrid/model.hpp"

namespace tabgrid {

enum class DataType { Integer, Real, Date, Text };

std::optional<DataType> parse_data_type(std::string_view name);
std::string_view to_string(DataType t);

// One configured meaning, as read from the rules file.
struct MeaningConfig {
  std::string name;
  std::vector<std::string> title_keywords;
  std::optional<std::string> title_regex;
  std::optional<std::string> content_regex;
  std::optional<DataType> data_type;
  double w_title = 1.0;
  double w_content = 1.0;
  double min_affinity = 0.0;
};

// A meaning with its regular expressions compiled.
struct Meaning {
  MeaningConfig config;
  std::optional<std::regex> title_re;
  std::optional<std::regex> content_re;
};

// Validates every meaning and compiles its patterns. Throws ConfigError with
// one entry per violation (bad regex, weights, ranges, duplicate names).
std::vector<Meaning> compile_meanings(const std::vector<MeaningConfig>& configs);

struct ColumnView {
  int index = 0;
  std::string title;
  std::vector<std::string> body_cells;
};

struct AffinityScores {
  double s_title_regex = 0.0;
  double s_title_keyword = 0.0;
  double s_content_regex = 0.0;
  double s_data_type = 0.0;
  double combined = 0.0;
};

struct Tuple {
  int row_index = 0;
  std::map<std::string, std::string> values;

  friend bool operator==(const Tuple&, const Tuple&) = default;
};

struct TupleSet {
  std::string file_id;
  int page_nr = 0;
  int table_idx = 0;
  std::vector<Tuple> tuples;

  friend bool operator==(const TupleSet&, const TupleSet&) = default;
};

// Unit-cost edit distance over Unicode scalar values of UTF-8 input.
std::size_t levenshtein(std::string_view a, std::string_view b);

// Trims, collapses whitespace runs to one space and lowercases ASCII.
std::string normalize_text(std::string_view s);

// 1 - distance / longer length on normalized strings; 1 for two empties.
double fuzzy_similarity(std::string_view a, std::string_view b);

// Best fuzzy similarity of `title` against any keyword. Keywords must be
// non-empty (std::invalid_argument otherwise).
double title_keyword_score(std::string_view title,
                           std::span<const std::string> keywords);

double regex_score(const std::string& text, const std::regex& pattern);
// Compiles `pattern` on the fly; throws ConfigError if it does not compile.
double regex_score(const std::string& text, const std::string& pattern);

// Mean regex score over whitespace-trimmed cells; 0 for an empty column.
double column_content_score(std::span<const std::string> cells,
                            const std::regex& pattern);

const std::regex& builtin_pattern(DataType t);
double data_type_score(std::span<const std::string> cells, DataType t);

// Weighted combination of the content and title groups, each taking the max
// of its two component scores.
double combine_affinity(const AffinityScores& s, double w_content,
                        double w_title);

AffinityScores affinity(const ColumnView& column, const Meaning& m);

// Header rows used to build column titles: the recorded count for booktabs
// tables, the first row for separator-based ones.
int header_rows(const RecognizedTable& table);

std::vector<ColumnView> column_views(const RecognizedTable& table);

TupleSet interpret_table(const RecognizedTable& table,
                         std::span<const Meaning> meanings,
                         std::string file_id = {}, int page_nr = 0,
                         int table_idx = 0);

}  // namespace tabgrid
