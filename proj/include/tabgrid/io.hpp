#pragma once

// JSON surfaces: page layouts, recognized tables, configs, tuple sets, and
// the file naming conventions that join them. Field-level documentation lives
// in docs/formats.md.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tabgrid/evaluator.hpp"
#include "tabgrid/interpreter.hpp"
#include "tabgrid/model.hpp"
#include "tabgrid/pipeline.hpp"

namespace tabgrid {

using Json = nlohmann::json;

// Validates and clamps; throws InputError naming the offending field.
PageLayout layout_from_json(const Json& j);
Json to_json(const PageLayout& layout);

RecognizerConfig recognizer_config_from_json(const Json& j);
Json to_json(const RecognizerConfig& cfg);

EvalConfig eval_config_from_json(const Json& j);

Json to_json(const RecognizedTable& t);
RecognizedTable table_from_json(const Json& j);

// One page of tables: recognition output and recognition ground truth share
// this schema. `expected_missed` marks ground-truth tables the recognizer is
// expected not to report under the fixture's configuration.
struct PageTables {
  std::string file_id;
  int page_nr = 0;
  PageOrientation orientation = PageOrientation::Standard;
  std::vector<RecognizedTable> tables;
  std::vector<bool> expected_missed;
  std::vector<std::string> diagnostics;
};

Json to_json(const PageTables& p);
PageTables page_tables_from_json(const Json& j);

// Throws ConfigError listing every schema problem; does not compile regexes.
std::vector<MeaningConfig> meanings_from_json(const Json& j);
Json to_json(const std::vector<MeaningConfig>& meanings);

Json to_json(const TupleSet& t);
TupleSet tuple_set_from_json(const Json& j);

// <FILE_ID>_page<NR>.json
std::string layout_file_name(const std::string& file_id, int page_nr);
struct PageKey {
  std::string file_id;
  int page_nr = 0;
};
std::optional<PageKey> parse_layout_file_name(const std::string& name);

// <FILE_ID>_<PAGE_NR>_<TABLE_IDX>.json
std::string tuple_file_name(const std::string& file_id, int page_nr, int table_idx);
struct TableKey {
  std::string file_id;
  int page_nr = 0;
  int table_idx = 0;
};
// Also accepts "page07"/"table0" style tokens for the two numeric fields.
std::optional<TableKey> parse_tuple_file_name(const std::string& name);

Json read_json_file(const std::filesystem::path& path);  // throws InputError
// Writes `j` pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

std::string to_string(TableSource s);
std::string to_string(PageOrientation o);
std::optional<PageOrientation> parse_orientation(const std::string& s);

}  // namespace tabgrid
