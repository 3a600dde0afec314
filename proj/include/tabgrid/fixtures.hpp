#pragma once

// Synthetic page generator: renders bordered and booktabs tables directly as
// page layouts together with their ground-truth grids and tuples.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tabgrid/interpreter.hpp"
#include "tabgrid/io.hpp"
#include "tabgrid/model.hpp"

namespace tabgrid {

enum class FixtureKind { Bordered, BookTabs };

struct MergeSpec {
  int row = 0;
  int col = 0;
  int row_span = 1;
  int col_span = 1;
};

// A header group under one cmidrule, columns first..last inclusive.
struct GroupSpec {
  int first = 0;
  int last = 0;
};

struct TableSpec {
  FixtureKind kind = FixtureKind::Bordered;
  int rows = 3;  // bordered: all rows; booktabs: body rows only
  int cols = 3;
  std::vector<MergeSpec> merges;               // bordered only
  std::vector<std::vector<GroupSpec>> levels;  // booktabs only, top-down
  std::vector<int> gaps;  // booktabs column gaps in px; empty = random
  bool label = true;
};

struct FixtureSpec {
  std::string file_id = "synth";
  std::uint64_t seed = 1;
  RecognizerConfig recognizer;
  int jitter_px = 0;  // per ruling line, uniform in [-jitter_px, jitter_px]
  int random_bordered = 0;
  int random_booktabs = 0;
  int random_interpretation = 0;
  bool corrupt = false;  // alter one matched cell per interpretation table
  std::vector<TableSpec> tables;
};

struct FixturePage {
  PageLayout layout;
  PageTables truth;
  std::vector<TupleSet> tuples;  // interpretation ground truth
  std::optional<std::string> corrupted;  // description of the altered word
};

struct FixtureCorpus {
  std::string file_id;
  RecognizerConfig recognizer;
  std::vector<MeaningConfig> meanings;
  std::vector<FixturePage> pages;
};

// Throws ConfigError listing every problem.
FixtureSpec fixture_spec_from_json(const Json& j);
void validate(const FixtureSpec& spec);

FixtureCorpus generate_fixtures(const FixtureSpec& spec);

// layouts/, gt_recognition/, gt_interpretation/, recognizer.json, rules.json
void write_fixtures(const FixtureCorpus& corpus, const std::filesystem::path& out);

// COMPOUND and HDAC6 meanings matching the interpretation fixtures.
std::vector<MeaningConfig> example_meanings();

}  // namespace tabgrid
