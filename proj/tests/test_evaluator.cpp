#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tabgrid/errors.hpp"
#include "tabgrid/evaluator.hpp"

using namespace tabgrid;

namespace {

RecognizedTable shifted(RecognizedTable t, int dx) {
  t.region.left += dx;
  t.region.right += dx;
  for (Cell& c : t.cells) {
    c.box.left += dx;
    c.box.right += dx;
  }
  return t;
}

RecognizedTable at(BoundingBox region) {
  RecognizedTable t = th::grid_table({{"a"}});
  t.region = region;
  t.cells[0].box = region;
  return t;
}

TupleSet tuples(std::string file, int page, int idx, const std::vector<std::string>& ids) {
  TupleSet s{std::move(file), page, idx, {}};
  for (std::size_t i = 0; i < ids.size(); ++i)
    s.tuples.push_back({static_cast<int>(i), {{"ID", ids[i]}}});
  return s;
}

}  // namespace

TEST_SUITE("evaluator") {

TEST_CASE("adjacency examples") {
  CHECK(adjacency_relations(th::grid_table({{"a"}})).empty());
  const auto four = adjacency_relations(th::grid_table({{"a", "b"}, {"c", "d"}}));
  CHECK(four.size() == 4);
  CHECK(std::count_if(four.begin(), four.end(),
                      [](const auto& r) { return r.direction == Direction::Right; }) == 2);
  const auto skip = adjacency_relations(th::grid_table({{"a", " ", "c"}}));
  REQUIRE(skip.size() == 1);
  CHECK(skip[0].from_content == "a");
  CHECK(skip[0].to_content == "c");
  CHECK(skip[0].direction == Direction::Right);
  CHECK(adjacency_relations(th::grid_table({{"", ""}})).empty());
}

TEST_CASE("adjacency follows the starting row of spanned cells") {
  auto t = th::grid_table({{"a", "b"}, {"c", "d"}});
  // a spans both rows
  t.cells[0].row_end = 1;
  t.cells[0].box.bottom = 100;
  t.cells.erase(t.cells.begin() + 2);
  const auto rel = adjacency_relations(t);
  // a→b, b→d, c is gone
  CHECK(rel.size() == 2);
}

TEST_CASE("match_tables examples") {
  const std::vector<RecognizedTable> gt{at({0, 0, 100, 100})};
  auto m = match_tables(gt, gt, 0.5);
  REQUIRE(m.pairs.size() == 1);
  CHECK(m.pairs[0].iou == 1.0);

  // IoU 0.4
  const std::vector<RecognizedTable> low{at({0, 0, 100, 100})}, far{at({0, 0, 40, 100})};
  m = match_tables(low, far, 0.5);
  CHECK(m.pairs.empty());
  CHECK(m.unmatched_gt == std::vector<int>{0});
  CHECK(m.unmatched_pred == std::vector<int>{0});

  const std::vector<RecognizedTable> preds{at({0, 0, 60, 100}), at({0, 0, 80, 100})};
  m = match_tables(gt, preds, 0.5);
  REQUIRE(m.pairs.size() == 1);
  CHECK(m.pairs[0].pred == 1);
  CHECK(m.pairs[0].iou == doctest::Approx(0.8));
  CHECK(m.unmatched_pred == std::vector<int>{0});
}

TEST_CASE("recognition_score examples") {
  const EvalConfig cfg;
  const DocumentTables doc{{th::grid_table({{"a", "b"}, {"c", "d"}})}};
  auto s = recognition_score(doc, doc, cfg);
  CHECK(s.precision == 1.0);
  CHECK(s.recall == 1.0);
  CHECK(s.f1 == 1.0);

  // 2×5 filled: 8 Right, 5 Down
  const DocumentTables big{{th::grid_table({{"a", "b", "c", "x", "y"}, {"d", "e", "f", "z", "w"}})}};
  s = recognition_score(big, DocumentTables{{}}, cfg);
  CHECK(s.tp == 0);
  CHECK(s.fn == 13);
  CHECK(s.fp == 0);
  CHECK(s.recall == 0.0);
  s = recognition_score(DocumentTables{}, big, cfg);
  CHECK(s.fp == 13);

  // a wrong corner cell breaks the two relations into it
  const DocumentTables wrong{{th::grid_table({{"a", "b"}, {"c", "X"}})}};
  s = recognition_score(doc, wrong, cfg);
  CHECK(s.tp == 2);
  CHECK(s.fp == 2);
  CHECK(s.fn == 2);
}

TEST_CASE("relations compare as multisets") {
  const EvalConfig cfg;
  const DocumentTables gt{{th::grid_table({{"1", "1"}, {"1", "1"}})}};
  const DocumentTables pred{{th::grid_table({{"1", "1"}}, 0, 0, 100, 100)}};
  const auto s = recognition_score(gt, pred, cfg);
  CHECK(s.tp == 1);
  CHECK(s.fn == 3);
  CHECK(s.fp == 0);
}

TEST_CASE("PRF arithmetic") {
  auto p = PRF::from_counts(69, 4, 45);
  CHECK(p.precision == doctest::Approx(0.9452).epsilon(5e-5 / 0.9452));
  CHECK(p.recall == doctest::Approx(0.6053).epsilon(5e-5 / 0.6053));
  CHECK(p.f1 == doctest::Approx(0.7380).epsilon(5e-5 / 0.7380));
  CHECK(PRF::from_counts(69, 4, 5).f1 == doctest::Approx(0.9388).epsilon(5e-5 / 0.9388));
  p = PRF::from_counts(0, 0, 0);
  CHECK(p.f1 == 1.0);
  p = PRF::from_counts(0, 3, 2);
  CHECK(p.precision == 0.0);
  CHECK(p.f1 == 0.0);
  p += PRF::from_counts(5, 0, 0);
  CHECK(p.tp == 5);
  CHECK(p.precision == doctest::Approx(5.0 / 8.0));
}

TEST_CASE("corpus_average examples") {
  const std::vector<PRF> one{PRF::from_counts(3, 1, 0)};
  CHECK(corpus_average(one).precision == doctest::Approx(0.75));
  const std::vector<PRF> two{PRF::from_counts(1, 0, 0), PRF::from_counts(0, 1, 1)};
  CHECK(corpus_average(two).f1 == doctest::Approx(0.5));
  std::vector<PRF> three(3);
  three[0].f1 = 0.9;
  three[1].f1 = 0.8;
  three[2].f1 = 0.7;
  CHECK(corpus_average(three).f1 == doctest::Approx(0.8));
  CHECK_THROWS_AS(corpus_average(std::vector<PRF>{}), EmptyCorpus);
}

TEST_CASE("wavg_f1 examples") {
  CHECK(wavg_f1({{0.6, 1.0}, {0.7, 0.0}, {0.8, 0.0}, {0.9, 0.0}}) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(wavg_f1({{0.6, 0.42}, {0.7, 0.42}, {0.8, 0.42}, {0.9, 0.42}}) == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(wavg_f1({}) == 0.0);
}

TEST_CASE("cell_f1_at_iou examples") {
  const auto gt = th::grid_table({{"a", "b"}, {"c", "d"}});
  auto s = cell_f1_at_iou(gt, gt, 0.9);
  CHECK(s.tp == 4);
  // 71 px of 100 overlap: IoU 71/129 ≈ 0.550
  const auto moved = shifted(gt, 29);
  CHECK(iou(gt.cells[0].box, moved.cells[0].box) == doctest::Approx(0.55).epsilon(0.01));
  s = cell_f1_at_iou(gt, moved, 0.6);
  CHECK(s.tp == 0);
  CHECK(s.fp == 4);
  CHECK(s.fn == 4);
  CHECK(cell_f1_at_iou(gt, moved, 0.5).tp == 4);
}

TEST_CASE("cell_counts include unmatched tables") {
  const std::vector<RecognizedTable> gt{th::grid_table({{"a", "b"}}), th::grid_table({{"c"}}, 0, 500)};
  const std::vector<RecognizedTable> pred{th::grid_table({{"a", "b"}})};
  const auto s = cell_counts(gt, pred, 0.6, 0.5);
  CHECK(s.tp == 2);
  CHECK(s.fn == 1);
  CHECK(s.fp == 0);
}

TEST_CASE("tuple_set_f1 examples") {
  const auto five = tuples("d", 1, 0, {"1", "2", "3", "4", "5"});
  auto s = tuple_set_f1(five, five);
  CHECK(s.precision == 1.0);
  CHECK(s.recall == 1.0);
  s = tuple_set_f1(five, tuples("d", 1, 0, {"1", "2", "3"}));
  CHECK(s.precision == 1.0);
  CHECK(s.recall == doctest::Approx(0.6));
  s = tuple_set_f1(five, tuples("d", 1, 0, {"1", "2", "3", "4", "6"}));
  CHECK(s.tp == 4);
  CHECK(s.fp == 1);
  CHECK(s.fn == 1);
  s = tuple_set_f1(five, tuples("d", 1, 0, {" 1", "2 ", "3", "4", "5"}));
  CHECK(s.tp == 5);
  // duplicates match once each
  s = tuple_set_f1(tuples("d", 1, 0, {"1"}), tuples("d", 1, 0, {"1", "1"}));
  CHECK(s.tp == 1);
  CHECK(s.fp == 1);
}

TEST_CASE("interpretation_score with an unmatched prediction") {
  const std::vector<TupleSet> gt{tuples("d", 1, 0, {"1", "2"}), tuples("d", 1, 1, {"3", "4"})};
  const std::vector<TupleSet> pred{tuples("d", 1, 0, {"3", "4"}), tuples("d", 1, 1, {"9", "8"}),
                                   tuples("d", 1, 2, {"1", "2"})};
  const auto s = interpretation_score(gt, pred);
  CHECK(s.tp == 4);
  CHECK(s.fp == 2);
  CHECK(s.fn == 0);
}

TEST_CASE("interpretation_score pools pages and counts missed tables") {
  const std::vector<TupleSet> gt{tuples("d", 1, 0, {"1", "2"}), tuples("d", 2, 0, {"3", "4", "5"}),
                                 tuples("e", 1, 0, {"6"})};
  const std::vector<TupleSet> pred{tuples("d", 1, 0, {"1", "2"}), tuples("d", 2, 0, {"4", "3"})};
  const auto s = interpretation_score(gt, pred);
  CHECK(s.tp == 4);
  CHECK(s.fp == 0);
  CHECK(s.fn == 2);
}

TEST_CASE("interpretation_score rejects duplicate keys") {
  const std::vector<TupleSet> gt{tuples("d", 1, 0, {"1"}), tuples("d", 1, 0, {"2"})};
  CHECK_THROWS_AS(interpretation_score(gt, std::vector<TupleSet>{}), DuplicateKey);
  CHECK_THROWS_AS(interpretation_score(std::vector<TupleSet>{}, gt), DuplicateKey);
}

TEST_CASE("eval config validation") {
  EvalConfig c;
  CHECK_NOTHROW(c.validate());
  c.iou_min = 0.0;
  c.cell_iou_thresholds = {0.7, 0.6};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

}  // TEST_SUITE
