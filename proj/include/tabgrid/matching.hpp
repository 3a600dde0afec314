#pragma once

#include <utility>
#include <vector>

namespace tabgrid {

struct WeightedEdge {
  int left = 0;
  int right = 0;
  double weight = 0.0;
};

struct WeightedBipartiteGraph {
  int n_left = 0;
  int n_right = 0;
  std::vector<WeightedEdge> edges;

  // Throws std::invalid_argument on out-of-range indices, duplicate pairs or
  // negative / non-finite weights.
  void validate() const;
};

struct Matching {
  std::vector<std::pair<int, int>> pairs;  // sorted by left index
  double total_weight = 0.0;
};

// Exact maximum-weight matching (not necessarily perfect). Among optimal
// matchings, returns the one whose pair list is lexicographically smallest,
// preferring a matched left vertex over an unmatched one.
Matching max_weight_matching(const WeightedBipartiteGraph& g);

}  // namespace tabgrid
