#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "tabgrid/errors.hpp"
#include "tabgrid/separator_recognizer.hpp"

using namespace tabgrid;
using th::hsep;
using th::vsep;
using th::word;

namespace {

// Rulings of an n×m bordered grid with 100×50 cells at the origin.
std::vector<Separator> full_grid(int rows, int cols) {
  std::vector<Separator> s;
  for (int i = 0; i <= rows; ++i) s.push_back(hsep(0, i * 50, cols * 100 + 2, i * 50 + 2));
  for (int j = 0; j <= cols; ++j) s.push_back(vsep(j * 100, 0, j * 100 + 2, rows * 50 + 2));
  return s;
}

std::vector<std::pair<double, double>> points(const SeparatorCluster& c) {
  std::vector<std::pair<double, double>> p;
  for (const Point& q : c.intersections) p.push_back({q.x, q.y});
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

TEST_SUITE("separator_recognizer") {

TEST_CASE("merge_separators examples") {
  const std::vector<Separator> cross{hsep(0, 50, 100, 52), vsep(50, 0, 52, 100)};
  const auto c = merge_separators(cross, 5);
  REQUIRE(c.size() == 1);
  REQUIRE(c[0].intersections.size() == 1);
  CHECK(c[0].intersections[0] == Point{51, 51});
  CHECK(points(c[0]) == oracle::crossing_centers(cross, 5));

  CHECK(merge_separators({{hsep(0, 0, 100, 2), hsep(0, 100, 100, 102)}}, 5).empty());

  const auto grid = full_grid(3, 3);
  const auto g = merge_separators(grid, 5);
  REQUIRE(g.size() == 1);
  CHECK(g[0].intersections.size() == 16);
  CHECK(points(g[0]) == oracle::crossing_centers(grid, 5));
  CHECK(merge_separators({}, 5).empty());
}

TEST_CASE("expansion bridges near misses") {
  // 8 px gap closes under 5 px expansion but not without it
  const std::vector<Separator> s{hsep(0, 50, 100, 52), vsep(108, 0, 110, 100)};
  CHECK(merge_separators(s, 5).size() == 1);
  CHECK(merge_separators(s, 0).empty());
}

TEST_CASE("clusters match connected-component oracle") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> pos(0, 400), len(10, 150), n(1, 12);
  for (int it = 0; it < 200; ++it) {
    std::vector<Separator> seps;
    const int k = n(rng);
    for (int i = 0; i < k; ++i) {
      const int x = pos(rng), y = pos(rng), l = len(rng);
      seps.push_back(i % 2 ? hsep(x, y, x + l, y + 2) : vsep(x, y, x + 2, y + l));
    }
    std::set<std::set<int>> got;
    for (const auto& c : merge_separators(seps, 5)) {
      std::set<int> members;
      for (const auto& m : c.members)
        for (int i = 0; i < k; ++i)
          if (expand(seps[i].box, 5) == m.box && seps[i].orientation == m.orientation)
            members.insert(i);
      got.insert(members);
      for (const auto& m : c.members) CHECK(c.hull.contains(m.box));
    }
    CHECK(got == oracle::separator_components(seps, 5));
  }
}

TEST_CASE("label search") {
  RecognizerConfig cfg;
  const BoundingBox hull{100, 100, 400, 300};
  CHECK(assign_table_label(hull, std::vector{word(100, 70, 140, 80, "Table"), word(144, 70, 160, 80, "3:")}, cfg));
  CHECK(assign_table_label(hull, std::vector{word(100, 320, 124, 330, "Tab.")}, cfg));
  CHECK_FALSE(assign_table_label(hull, std::vector<Word>{}, cfg));
  CHECK_FALSE(assign_table_label(hull, std::vector{word(100, 20, 140, 30, "Table")}, cfg));
  CHECK_FALSE(assign_table_label(hull, std::vector{word(100, 70, 140, 80, "Results")}, cfg));
  CHECK(assign_table_label(hull, std::vector{word(100, 70, 140, 80, "TABLE")}, cfg));
  CHECK_FALSE(assign_table_label(hull, std::vector{word(700, 70, 740, 80, "Table")}, cfg));
  CHECK(starts_with_keyword("Tab.", cfg.label_keywords));
  CHECK_FALSE(starts_with_keyword("Tab", cfg.label_keywords));
}

TEST_CASE("cluster_positions") {
  CHECK(cluster_positions({10, 11, 13, 50}, 3) == std::vector<int>{11, 50});
  CHECK(cluster_positions({10, 14}, 3) == std::vector<int>{10, 14});
  CHECK(cluster_positions({}, 3).empty());
}

TEST_CASE("estimate_grid examples") {
  const auto g = estimate_grid(merge_separators(full_grid(2, 2), 5).at(0));
  CHECK(g.rows() == 2);
  CHECK(g.cols() == 2);
  CHECK(g.row_borders == std::vector<int>{1, 51, 101});
  CHECK(g.col_borders == std::vector<int>{1, 101, 201});
  CHECK(g.cells[1][0] == BoundingBox{1, 51, 101, 101});

  const auto one = estimate_grid(merge_separators(full_grid(1, 1), 5).at(0));
  CHECK(one.rows() == 1);
  CHECK(one.cols() == 1);

  const std::vector<Separator> thin{hsep(0, 0, 100, 2), hsep(0, 50, 100, 52), vsep(50, 0, 52, 52)};
  CHECK_THROWS_AS(estimate_grid(merge_separators(thin, 5).at(0)), DegenerateGrid);
}

TEST_CASE("refine_grid examples") {
  // inner vertical only in the bottom row
  std::vector<Separator> s{hsep(0, 0, 202, 2),   hsep(0, 50, 202, 52), hsep(0, 100, 202, 102),
                           vsep(0, 0, 2, 102),   vsep(200, 0, 202, 102),
                           vsep(100, 50, 102, 102)};
  auto cluster = merge_separators(s, 5).at(0);
  auto t = refine_grid(estimate_grid(cluster), cluster, std::vector<Word>{});
  REQUIRE(t.cells.size() == 3);
  CHECK(t.cells[0].col_start == 0);
  CHECK(t.cells[0].col_end == 1);
  CHECK(t.cells[0].row_end == 0);
  CHECK(t.cells[1].row_start == 1);
  CHECK(t.cells[1].col_end == 0);
  CHECK(t.cells[2].col_start == 1);
  CHECK(check_table_invariants(t).empty());

  cluster = merge_separators(full_grid(2, 2), 5).at(0);
  t = refine_grid(estimate_grid(cluster), cluster, std::vector<Word>{});
  CHECK(t.cells.size() == 4);

  // rough 2×2 grid, only the frame present
  const std::vector<Separator> frame{hsep(0, 0, 202, 2), hsep(0, 100, 202, 102),
                                     vsep(0, 0, 2, 102), vsep(200, 0, 202, 102)};
  cluster = merge_separators(frame, 5).at(0);
  RoughGrid rough;
  rough.row_borders = {1, 51, 101};
  rough.col_borders = {1, 101, 201};
  rough.cells = {{{1, 1, 101, 51}, {101, 1, 201, 51}}, {{1, 51, 101, 101}, {101, 51, 201, 101}}};
  t = refine_grid(rough, cluster, std::vector<Word>{});
  REQUIRE(t.cells.size() == 1);
  CHECK(t.cells[0].box == BoundingBox{1, 1, 201, 101});
  CHECK(t.cells[0].row_span() == 2);
  CHECK(t.cells[0].col_span() == 2);
}

TEST_CASE("vertical merge requires equal column spans") {
  // no middle ruling, but the bottom row is split and the top is not
  std::vector<Separator> s{hsep(0, 0, 202, 2),  hsep(0, 100, 202, 102), vsep(0, 0, 2, 102),
                           vsep(200, 0, 202, 102), vsep(100, 50, 102, 102)};
  auto cluster = merge_separators(s, 5).at(0);
  RoughGrid rough;
  rough.row_borders = {1, 51, 101};
  rough.col_borders = {1, 101, 201};
  rough.cells = {{{1, 1, 101, 51}, {101, 1, 201, 51}}, {{1, 51, 101, 101}, {101, 51, 201, 101}}};
  const auto t = refine_grid(rough, cluster, std::vector<Word>{});
  CHECK(t.cells.size() == 3);
  CHECK(oracle::tiles_exactly(t));
}

TEST_CASE("words land in cells by center") {
  auto cluster = merge_separators(full_grid(1, 2), 5).at(0);
  const std::vector<Word> ws{word(10, 10, 40, 20, "left"), word(110, 10, 140, 20, "right"),
                             word(97, 10, 107, 20, "edge")};
  const auto t = refine_grid(estimate_grid(cluster), cluster, ws);
  CHECK(t.cells[0].content == "left");
  CHECK(t.cells[1].content == "edge right");
}

TEST_CASE("detect_separator_tables") {
  PageLayout page;
  page.page_width = 600;
  page.page_height = 400;
  page.separators = full_grid(2, 3);
  for (auto& s : page.separators) {
    s.box.left += 50;
    s.box.right += 50;
    s.box.top += 100;
    s.box.bottom += 100;
  }
  std::vector<std::string> diag;
  auto tables = detect_separator_tables(page, RecognizerConfig{}, diag);
  REQUIRE(tables.size() == 1);
  CHECK(tables[0].n_rows == 2);
  CHECK(tables[0].n_cols == 3);
  CHECK_FALSE(tables[0].labeled);

  RecognizerConfig strict;
  strict.require_labels_separator = true;
  CHECK(detect_separator_tables(page, strict, diag).empty());
  CHECK_FALSE(diag.empty());
  page.words.push_back(word(50, 75, 80, 85, "Table"));
  tables = detect_separator_tables(page, strict, diag);
  REQUIRE(tables.size() == 1);
  CHECK(tables[0].labeled);
}

}  // TEST_SUITE
