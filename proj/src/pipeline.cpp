#include "tabgrid/pipeline.hpp"

#include "tabgrid/booktabs_recognizer.hpp"
#include "tabgrid/separator_recognizer.hpp"

namespace tabgrid {

namespace {

Orientation flip(Orientation o) {
  return o == Orientation::Horizontal ? Orientation::Vertical
                                      : Orientation::Horizontal;
}

Word transpose_word(const Word& w) { return {transpose(w.box), w.text, w.line_id}; }

bool overlaps_any(const RecognizedTable& t,
                  const std::vector<RecognizedTable>& accepted) {
  for (const RecognizedTable& a : accepted)
    if (intersection_area(a.region, t.region) > 0) return true;
  return false;
}

// Appends candidates that stay clear of every table already accepted.
void accept_disjoint(std::vector<RecognizedTable> candidates, const char* name,
                     PageResult& result) {
  for (RecognizedTable& t : candidates) {
    if (overlaps_any(t, result.tables)) {
      result.diagnostics.push_back(std::string(name) +
                                   " candidate discarded: overlaps an accepted table");
      continue;
    }
    result.tables.push_back(std::move(t));
  }
}

}  // namespace

PageLayout transpose_layout(const PageLayout& layout) {
  PageLayout out;
  out.page_width = layout.page_height;
  out.page_height = layout.page_width;
  out.words.reserve(layout.words.size());
  for (const Word& w : layout.words) out.words.push_back(transpose_word(w));
  for (const Separator& s : layout.separators)
    out.separators.push_back({transpose(s.box), flip(s.orientation)});
  for (const BoundingBox& b : layout.non_text_regions)
    out.non_text_regions.push_back(transpose(b));
  return out;
}

RecognizedTable transpose_table(const RecognizedTable& table) {
  RecognizedTable out = table;
  out.region = transpose(table.region);
  for (Cell& c : out.cells) {
    c.box = transpose(c.box);
    for (Word& w : c.words) w = transpose_word(w);
  }
  return out;
}

PageResult recognize_page(const PageLayout& layout, const RecognizerConfig& cfg,
                          PageOrientation orientation) {
  if (orientation == PageOrientation::Vertical) {
    PageResult r = recognize_page(transpose_layout(layout), cfg,
                                  PageOrientation::Standard);
    for (RecognizedTable& t : r.tables) t = transpose_table(t);
    r.orientation = PageOrientation::Vertical;
    return r;
  }

  PageResult result;
  accept_disjoint(detect_separator_tables(layout, cfg, result.diagnostics),
                  "separator", result);
  accept_disjoint(detect_booktabs_tables(layout, cfg, result.diagnostics),
                  "booktabs", result);
  return result;
}

}  // namespace tabgrid
