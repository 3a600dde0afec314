#include "tabgrid/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace tabgrid {

namespace {

using Matrix = std::vector<std::vector<double>>;

// Maximum total weight of an assignment between `rows` and `cols` of a dense
// weight matrix where missing edges weigh 0. Hungarian method on a square
// zero-padded cost matrix.
double best_assignment(const Matrix& w, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  const int n = static_cast<int>(std::max(rows.size(), cols.size()));
  if (n == 0 || rows.empty() || cols.empty()) return 0.0;
  auto cost = [&](int i, int j) {
    if (i > static_cast<int>(rows.size()) || j > static_cast<int>(cols.size()))
      return 0.0;
    return -w[rows[i - 1]][cols[j - 1]];
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total -= cost(p[j], j);
  return total;
}

}  // namespace

void WeightedBipartiteGraph::validate() const {
  if (n_left < 0 || n_right < 0)
    throw std::invalid_argument("negative graph side size");
  std::set<std::pair<int, int>> seen;
  for (const WeightedEdge& e : edges) {
    if (e.left < 0 || e.left >= n_left || e.right < 0 || e.right >= n_right)
      throw std::invalid_argument("edge index out of range");
    if (!std::isfinite(e.weight) || e.weight < 0.0)
      throw std::invalid_argument("edge weight must be finite and non-negative");
    if (!seen.insert({e.left, e.right}).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.left) +
                                  "," + std::to_string(e.right) + ")");
  }
}

Matching max_weight_matching(const WeightedBipartiteGraph& g) {
  g.validate();
  Matching result;
  if (g.edges.empty()) return result;

  Matrix w(g.n_left, std::vector<double>(g.n_right, 0.0));
  std::vector<std::vector<bool>> present(g.n_left, std::vector<bool>(g.n_right, false));
  double max_w = 0.0;
  for (const WeightedEdge& e : g.edges) {
    w[e.left][e.right] = e.weight;
    present[e.left][e.right] = true;
    max_w = std::max(max_w, e.weight);
  }
  const double tol = 1e-9 * max_w * (g.n_left + g.n_right);

  std::vector<int> rows(g.n_left), cols(g.n_right);
  for (int i = 0; i < g.n_left; ++i) rows[i] = i;
  for (int j = 0; j < g.n_right; ++j) cols[j] = j;
  const double optimum = best_assignment(w, rows, cols);

  // Fix left vertices in order, each to the smallest right vertex that still
  // admits an optimal completion.
  double fixed = 0.0;
  std::vector<int> free_cols = cols;
  for (int i = 0; i < g.n_left; ++i) {
    const std::vector<int> later(rows.begin() + i + 1, rows.end());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      const int j = free_cols[k];
      if (!present[i][j]) continue;
      std::vector<int> rest = free_cols;
      rest.erase(rest.begin() + static_cast<long>(k));
      const double value = fixed + w[i][j] + best_assignment(w, later, rest);
      if (value >= optimum - tol) {
        result.pairs.emplace_back(i, j);
        fixed += w[i][j];
        free_cols = std::move(rest);
        break;
      }
    }
  }
  for (const auto& [l, r] : result.pairs) result.total_weight += w[l][r];
  return result;
}

}  // namespace tabgrid
