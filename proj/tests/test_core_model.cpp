#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "tabgrid/errors.hpp"
#include "tabgrid/geometry.hpp"
#include "tabgrid/model.hpp"

using namespace tabgrid;
using th::word;

TEST_SUITE("core_model") {

TEST_CASE("iou examples") {
  CHECK(iou({0, 0, 10, 10}, {0, 0, 10, 10}) == 1.0);
  CHECK(iou({0, 0, 10, 10}, {20, 0, 30, 10}) == 0.0);
  CHECK(iou({0, 0, 10, 10}, {5, 0, 15, 10}) == doctest::Approx(50.0 / 150.0).epsilon(1e-12));
  CHECK(iou({3, 3, 3, 3}, {3, 3, 3, 3}) == 0.0);
  CHECK(iou({0, 0, 0, 10}, {0, 0, 10, 10}) == 0.0);
}

TEST_CASE("iou matches pixel counting") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto a = th::random_box(rng, 60, 30);
    const auto b = th::random_box(rng, 60, 30);
    CHECK(iou(a, b) == doctest::Approx(oracle::iou_by_pixels(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("expand examples") {
  CHECK(expand({10, 10, 20, 20}, 5) == BoundingBox{5, 5, 25, 25});
  CHECK(expand({10, 10, 20, 20}, 0) == BoundingBox{10, 10, 20, 20});
  CHECK(expand({2, 2, 4, 4}, 5) == BoundingBox{-3, -3, 9, 9});
  CHECK(clamp_to(expand({2, 2, 4, 4}, 5), 100, 100) == BoundingBox{0, 0, 9, 9});
}

TEST_CASE("intersects examples") {
  CHECK(intersects({0, 0, 10, 10}, {10, 0, 20, 10}));
  CHECK_FALSE(intersects({0, 0, 10, 10}, {11, 0, 20, 10}));
  CHECK(intersects({0, 0, 10, 10}, {5, 5, 6, 6}));
  CHECK(intersects({0, 0, 10, 10}, {10, 10, 20, 20}));
}

TEST_CASE("intersects agrees with closed-interval oracle") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto a = th::random_box(rng, 50, 20);
    const auto b = th::random_box(rng, 50, 20);
    CHECK(intersects(a, b) == oracle::touches(a, b));
  }
}

TEST_CASE("box helpers") {
  const BoundingBox b{1, 2, 11, 7};
  CHECK(b.width() == 10);
  CHECK(b.height() == 5);
  CHECK(b.area() == 50);
  CHECK(b.contains_point(1, 2));
  CHECK_FALSE(b.contains_point(11, 3));
  CHECK(hull(b, {20, 0, 21, 1}) == BoundingBox{1, 0, 21, 7});
  CHECK(intersection_area(b, {5, 5, 30, 30}) == 12);
  CHECK(transpose(BoundingBox{1, 2, 3, 4}) == BoundingBox{2, 1, 4, 3});
}

TEST_CASE("orientation classification") {
  CHECK(classify_orientation({0, 0, 10, 2}) == Orientation::Horizontal);
  CHECK(classify_orientation({0, 0, 2, 10}) == Orientation::Vertical);
  CHECK(classify_orientation({0, 0, 4, 4}) == Orientation::Horizontal);
  CHECK(orientation_consistent({{0, 0, 4, 4}, Orientation::Vertical}));
  CHECK_FALSE(orientation_consistent({{0, 0, 10, 2}, Orientation::Vertical}));
  CHECK_FALSE(orientation_consistent({{0, 0, 2, 10}, Orientation::Horizontal}));
}

TEST_CASE("recognizer config validation") {
  RecognizerConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.gamma == 2.0);
  c.gamma = 0.0;
  c.label_keywords.clear();
  c.separator_expand_px = -1;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.violations().size() == 3);
  }
  RecognizerConfig off;
  off.require_labels_booktabs = false;
  off.label_keywords.clear();
  CHECK_NOTHROW(off.validate());
}

TEST_CASE("join_words orders lines then words") {
  std::vector<Word> ws{word(50, 0, 60, 10, "b"), word(0, 20, 10, 30, "c"),
                       word(0, 1, 10, 11, "a")};
  CHECK(join_words(ws) == "a b c");
  CHECK(join_words({}) == "");
}

TEST_CASE("group_lines uses line ids when complete") {
  std::vector<Word> ws{word(0, 0, 10, 10, "x"), word(20, 40, 30, 50, "y")};
  ws[0].line_id = 7;
  ws[1].line_id = 7;
  const auto lines = group_lines(ws);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].size() == 2);
  ws[1].line_id.reset();
  CHECK(group_lines(ws).size() == 2);
}

TEST_CASE("group_lines chains on half overlap") {
  std::vector<Word> ws{word(0, 0, 10, 10), word(20, 5, 30, 15), word(40, 12, 50, 22)};
  const auto lines = group_lines(ws);
  CHECK(lines.size() == 2);
}

TEST_CASE("assign_words is center based") {
  std::vector<Cell> cells(2);
  cells[0].box = {0, 0, 50, 20};
  cells[1].box = {50, 0, 100, 20};
  assign_words(cells, {word(40, 5, 58, 15, "left"), word(52, 5, 70, 15, "right"),
                       word(200, 5, 210, 15, "outside")});
  CHECK(cells[0].content == "left");
  CHECK(cells[1].content == "right");
}

TEST_CASE("table invariants") {
  RecognizedTable t = th::grid_table({{"a", "b"}, {"c", "d"}});
  CHECK(check_table_invariants(t).empty());
  t.cells.pop_back();
  CHECK_FALSE(check_table_invariants(t).empty());
  t = th::grid_table({{"a", "b"}});
  t.cells[1].box.left -= 10;
  CHECK_FALSE(check_table_invariants(t).empty());
  REQUIRE(th::grid_table({{"a"}}).cell_at(0, 0) != nullptr);
  CHECK(th::grid_table({{"a"}}).cell_at(1, 0) == nullptr);
}

}  // TEST_SUITE
