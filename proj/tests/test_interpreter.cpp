#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "tabgrid/errors.hpp"
#include "tabgrid/interpreter.hpp"

using namespace tabgrid;

namespace {

Meaning compiled(MeaningConfig c) { return compile_meanings({std::move(c)}).at(0); }

MeaningConfig compound() {
  MeaningConfig c;
  c.name = "COMPOUND";
  c.title_keywords = {"compound", "cpd"};
  c.content_regex = R"(^\d+[a-z]?$)";
  c.min_affinity = 0.6;
  return c;
}

MeaningConfig potency() {
  MeaningConfig c;
  c.name = "HDAC6";
  c.title_keywords = {"HDAC6"};
  c.title_regex = R"(HDAC\s*6)";
  c.data_type = DataType::Real;
  c.min_affinity = 0.6;
  return c;
}

}  // namespace

TEST_SUITE("interpreter") {

TEST_CASE("levenshtein examples") {
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("abc", "abc") == 0);
  CHECK(levenshtein("flaw", "lawn") == 2);
  // code points, not bytes
  CHECK(levenshtein("\xce\xb1\xce\xb2", "\xce\xb1\xce\xb3") == 1);
  CHECK(levenshtein("\xc3\xa9", "e") == 1);
}

TEST_CASE("levenshtein agrees with the full matrix") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> len(0, 12), ch(0, 3);
  for (int it = 0; it < 300; ++it) {
    std::string a(len(rng), 'a'), b(len(rng), 'a');
    for (char& c : a) c = static_cast<char>('a' + ch(rng));
    for (char& c : b) c = static_cast<char>('a' + ch(rng));
    CHECK(levenshtein(a, b) == oracle::levenshtein_matrix(a, b));
  }
}

TEST_CASE("normalization and fuzzy similarity") {
  CHECK(normalize_text("  HDAC6   IC50 \t") == "hdac6 ic50");
  CHECK(fuzzy_similarity("Compound", "Compd") == doctest::Approx(0.625));
  CHECK(fuzzy_similarity("ab", "xy") == 0.0);
  CHECK(fuzzy_similarity("", "") == 1.0);
  CHECK(fuzzy_similarity("Cpd", " cpd ") == 1.0);
}

TEST_CASE("title keyword score") {
  const std::vector<std::string> kw{"HDAC6"};
  CHECK(title_keyword_score("HDAC6 IC50", kw) == doctest::Approx(0.5));
  const std::vector<std::string> two{"xyz", "HDAC6 IC50"};
  CHECK(title_keyword_score("HDAC6 IC50", two) == 1.0);
  CHECK_THROWS_AS(title_keyword_score("x", std::vector<std::string>{}), std::invalid_argument);
}

TEST_CASE("regex score") {
  CHECK(regex_score("HDAC6 IC50 (nM)", std::string(R"(IC\s*50)")) == 1.0);
  CHECK(regex_score("HDAC6", std::string(R"(IC\s*50)")) == 0.0);
  CHECK(regex_score("", std::string(".*")) == 1.0);
  CHECK_THROWS_AS(regex_score("x", std::string("(")), ConfigError);
}

TEST_CASE("content and data type scores") {
  const std::vector<std::string> mixed{"1.2", "3", "x"};
  CHECK(column_content_score(mixed, std::regex(R"(^\d+(\.\d+)?$)")) == doctest::Approx(2.0 / 3.0));
  CHECK(column_content_score(std::vector<std::string>{}, std::regex(".*")) == 0.0);
  CHECK(column_content_score(std::vector<std::string>{" 12 "}, std::regex("^12$")) == 1.0);
  CHECK(data_type_score(std::vector<std::string>{"12", "-3", "0"}, DataType::Integer) == 1.0);
  CHECK(data_type_score(std::vector<std::string>{"12.5"}, DataType::Integer) == 0.0);
  CHECK(data_type_score(std::vector<std::string>{"12.5", ".5", "1e-3"}, DataType::Real) == 1.0);
  CHECK(data_type_score(std::vector<std::string>{"2021-06-01"}, DataType::Date) == 1.0);
  CHECK(data_type_score(std::vector<std::string>{"June"}, DataType::Date) == 0.0);
  CHECK(data_type_score(std::vector<std::string>{"abc", ""}, DataType::Text) == 0.5);
  CHECK(parse_data_type("Integer") == DataType::Integer);
  CHECK_FALSE(parse_data_type("blob"));
}

TEST_CASE("affinity combination") {
  AffinityScores s;
  s.s_content_regex = 1.0;
  s.s_title_keyword = 0.8;
  CHECK(combine_affinity(s, 1.0, 1.0) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(combine_affinity(s, 0.0, 1.0) == doctest::Approx(0.8));
  s.s_title_regex = 0.3;
  CHECK(combine_affinity(s, 0.0, 1.0) == doctest::Approx(0.8));
  CHECK(combine_affinity(s, 3.0, 1.0) == doctest::Approx(0.95));
}

TEST_CASE("affinity of a column") {
  const ColumnView col{0, "Cpd.", {"1", "2a", "x"}};
  const auto s = affinity(col, compiled(compound()));
  CHECK(s.s_title_keyword == doctest::Approx(0.75));
  CHECK(s.s_content_regex == doctest::Approx(2.0 / 3.0));
  CHECK(s.s_title_regex == 0.0);
  CHECK(s.s_data_type == 0.0);
  CHECK(s.combined == doctest::Approx((0.75 + 2.0 / 3.0) / 2));
}

TEST_CASE("column views from booktabs headers") {
  auto t = th::grid_table({{"", "Potency"}, {"Compound", "HDAC6"}, {"1", "0.5"}, {"2", "0.7"}});
  t.source = TableSource::BookTabs;
  t.header_row_count = 2;
  const auto views = column_views(t);
  REQUIRE(views.size() == 2);
  CHECK(views[0].title == "Compound");
  CHECK(views[1].title == "Potency HDAC6");
  CHECK(views[1].body_cells == std::vector<std::string>{"0.5", "0.7"});
  t.source = TableSource::SeparatorBased;
  CHECK(column_views(t)[1].title == "Potency");
}

TEST_CASE("interpret a small table") {
  const auto meanings = compile_meanings({compound(), potency()});
  const auto t = th::grid_table({{"Structure", "Compd", "HDAC6 IC50 (nM)"},
                                 {"ring", "1", "0.012"},
                                 {"chain", "2b", "1.500"}});
  const auto ts = interpret_table(t, meanings, "doc", 3, 1);
  CHECK(ts.file_id == "doc");
  CHECK(ts.page_nr == 3);
  CHECK(ts.table_idx == 1);
  REQUIRE(ts.tuples.size() == 2);
  CHECK(ts.tuples[0].row_index == 0);
  CHECK(ts.tuples[0].values == std::map<std::string, std::string>{{"COMPOUND", "1"}, {"HDAC6", "0.012"}});
  CHECK(ts.tuples[1].values.at("COMPOUND") == "2b");
}

TEST_CASE("interpretation below thresholds yields nothing") {
  const auto meanings = compile_meanings({compound()});
  const auto t = th::grid_table({{"Name", "Value"}, {"x", "y"}});
  CHECK(interpret_table(t, meanings).tuples.empty());
  CHECK(interpret_table(t, std::vector<Meaning>{}).tuples.empty());
}

TEST_CASE("body cells spanning rows repeat") {
  auto t = th::grid_table({{"Cpd", "HDAC6"}, {"1", "0.5"}, {"2", ""}});
  // merge column 1 of both body rows
  t.cells[3].row_end = 2;
  t.cells[3].box.bottom = 150;
  t.cells.erase(t.cells.begin() + 5);
  REQUIRE(check_table_invariants(t).empty());
  const auto ts = interpret_table(t, compile_meanings({compound(), potency()}));
  REQUIRE(ts.tuples.size() == 2);
  CHECK(ts.tuples[1].values.at("HDAC6") == "0.5");
}

TEST_CASE("compile errors are collected") {
  MeaningConfig bad = compound();
  bad.content_regex = "([";
  bad.w_title = -1;
  MeaningConfig dup = compound();
  MeaningConfig empty;
  empty.name = "E";
  try {
    compile_meanings({bad, dup, empty});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    // bad regex, negative weight, zero weight sum, duplicate, no rule
    CHECK(e.violations().size() == 5);
  }
  MeaningConfig range = potency();
  range.min_affinity = 1.5;
  CHECK_THROWS_AS(compile_meanings({range}), ConfigError);
  MeaningConfig zero = potency();
  zero.w_title = zero.w_content = 0;
  CHECK_THROWS_AS(compile_meanings({zero}), ConfigError);
}

}  // TEST_SUITE
