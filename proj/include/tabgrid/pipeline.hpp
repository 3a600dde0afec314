#pragma once

#include <string>
#include <vector>

#include "tabgrid/model.hpp"

namespace tabgrid {

enum class PageOrientation { Standard, Vertical };

struct PageResult {
  std::vector<RecognizedTable> tables;
  PageOrientation orientation = PageOrientation::Standard;
  std::vector<std::string> diagnostics;
};

PageLayout transpose_layout(const PageLayout& layout);
RecognizedTable transpose_table(const RecognizedTable& table);

// Separator-based tables first, then booktabs candidates that do not overlap
// any table accepted so far. Vertical pages are recognized transposed and the
// resulting boxes mapped back.
PageResult recognize_page(const PageLayout& layout, const RecognizerConfig& cfg,
                          PageOrientation orientation = PageOrientation::Standard);

}  // namespace tabgrid
