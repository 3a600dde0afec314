#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "tabgrid/model.hpp"

namespace th {

using namespace tabgrid;

inline Word word(int l, int t, int r, int b, std::string text = "w") {
  return Word{{l, t, r, b}, std::move(text), std::nullopt};
}

inline Separator hsep(int l, int t, int r, int b) {
  return {{l, t, r, b}, Orientation::Horizontal};
}
inline Separator vsep(int l, int t, int r, int b) {
  return {{l, t, r, b}, Orientation::Vertical};
}

// Plain grid of single-span cells, `w`×`h` px each, origin at (x0, y0).
inline RecognizedTable grid_table(const std::vector<std::vector<std::string>>& content,
                                  int x0 = 0, int y0 = 0, int w = 100, int h = 50) {
  RecognizedTable t;
  t.n_rows = static_cast<int>(content.size());
  t.n_cols = static_cast<int>(content.front().size());
  t.region = {x0, y0, x0 + w * t.n_cols, y0 + h * t.n_rows};
  for (int r = 0; r < t.n_rows; ++r)
    for (int c = 0; c < t.n_cols; ++c) {
      Cell cell;
      cell.row_start = cell.row_end = r;
      cell.col_start = cell.col_end = c;
      cell.box = {x0 + c * w, y0 + r * h, x0 + (c + 1) * w, y0 + (r + 1) * h};
      cell.content = content[r][c];
      if (!cell.content.empty())
        cell.words.push_back(word(cell.box.left + 5, cell.box.top + 5, cell.box.left + 15,
                                  cell.box.top + 15, cell.content));
      t.cells.push_back(cell);
    }
  return t;
}

inline BoundingBox random_box(std::mt19937_64& rng, int extent = 200, int max_size = 60) {
  std::uniform_int_distribution<int> pos(-extent / 4, extent);
  std::uniform_int_distribution<int> size(0, max_size);
  const int l = pos(rng), t = pos(rng);
  return {l, t, l + size(rng), t + size(rng)};
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("tabgrid_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace th
