#include "tabgrid/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "tabgrid/errors.hpp"
#include "tabgrid/matching.hpp"

namespace tabgrid {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool blank(const Cell& c) { return trim(c.content).empty(); }

using RelationKey = std::tuple<std::string, std::string, Direction>;

std::multiset<RelationKey> relation_keys(const RecognizedTable& t) {
  std::multiset<RelationKey> out;
  for (const AdjacencyRelation& r : adjacency_relations(t))
    out.emplace(r.from_content, r.to_content, r.direction);
  return out;
}

// Size of the multiset intersection.
long common(const std::multiset<RelationKey>& a, const std::multiset<RelationKey>& b) {
  long n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

struct BoxPair {
  double iou;
  int a;
  int b;
};

// Greedy descending-IoU one-to-one assignment between two box lists.
std::vector<BoxPair> greedy_pairs(std::span<const BoundingBox> a,
                                  std::span<const BoundingBox> b, double min_iou) {
  std::vector<BoxPair> candidates;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    for (int j = 0; j < static_cast<int>(b.size()); ++j) {
      const double v = iou(a[i], b[j]);
      if (v >= min_iou && v > 0.0) candidates.push_back({v, i, j});
    }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const BoxPair& x, const BoxPair& y) {
                     if (x.iou != y.iou) return x.iou > y.iou;
                     if (x.a != y.a) return x.a < y.a;
                     return x.b < y.b;
                   });
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  std::vector<BoxPair> out;
  for (const BoxPair& p : candidates) {
    if (used_a[p.a] || used_b[p.b]) continue;
    used_a[p.a] = used_b[p.b] = true;
    out.push_back(p);
  }
  return out;
}

std::vector<BoundingBox> regions(std::span<const RecognizedTable> tables) {
  std::vector<BoundingBox> out;
  for (const auto& t : tables) out.push_back(t.region);
  return out;
}

std::vector<BoundingBox> cell_boxes(const RecognizedTable& t) {
  std::vector<BoundingBox> out;
  for (const auto& c : t.cells) out.push_back(c.box);
  return out;
}

std::map<std::string, std::string> trimmed(const std::map<std::string, std::string>& m) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : m) out[k] = trim(v);
  return out;
}

}  // namespace

void EvalConfig::validate() const {
  std::vector<std::string> v;
  if (!(iou_min > 0.0 && iou_min <= 1.0)) v.push_back("iou_min must lie in (0,1]");
  for (std::size_t i = 0; i < cell_iou_thresholds.size(); ++i) {
    const double t = cell_iou_thresholds[i];
    if (!(t > 0.0 && t <= 1.0)) v.push_back("cell IoU thresholds must lie in (0,1]");
    if (i > 0 && !(t > cell_iou_thresholds[i - 1]))
      v.push_back("cell IoU thresholds must be strictly increasing");
  }
  if (!v.empty()) throw ConfigError(std::move(v));
}

PRF PRF::from_counts(long tp, long fp, long fn) {
  PRF r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.precision = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  r.recall = tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  const double s = r.precision + r.recall;
  r.f1 = s == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / s;
  return r;
}

PRF& PRF::operator+=(const PRF& o) {
  *this = from_counts(tp + o.tp, fp + o.fp, fn + o.fn);
  return *this;
}

std::vector<AdjacencyRelation> adjacency_relations(const RecognizedTable& table) {
  std::vector<AdjacencyRelation> out;
  for (const Cell& c : table.cells) {
    if (blank(c)) continue;
    for (int col = c.col_end + 1; col < table.n_cols; ++col) {
      const Cell* n = table.cell_at(c.row_start, col);
      if (n == nullptr || n == &c) continue;
      if (blank(*n)) {
        col = n->col_end;
        continue;
      }
      out.push_back({trim(c.content), trim(n->content), Direction::Right,
                     {c.row_start, c.col_start}});
      break;
    }
    for (int row = c.row_end + 1; row < table.n_rows; ++row) {
      const Cell* n = table.cell_at(row, c.col_start);
      if (n == nullptr || n == &c) continue;
      if (blank(*n)) {
        row = n->row_end;
        continue;
      }
      out.push_back({trim(c.content), trim(n->content), Direction::Down,
                     {c.row_start, c.col_start}});
      break;
    }
  }
  return out;
}

TableMatching match_tables(std::span<const RecognizedTable> gt,
                           std::span<const RecognizedTable> pred, double iou_min) {
  const auto g = regions(gt);
  const auto p = regions(pred);
  TableMatching m;
  std::vector<bool> gt_used(gt.size(), false), pred_used(pred.size(), false);
  for (const BoxPair& bp : greedy_pairs(g, p, iou_min)) {
    m.pairs.push_back({bp.a, bp.b, bp.iou});
    gt_used[bp.a] = true;
    pred_used[bp.b] = true;
  }
  for (int i = 0; i < static_cast<int>(gt.size()); ++i)
    if (!gt_used[i]) m.unmatched_gt.push_back(i);
  for (int j = 0; j < static_cast<int>(pred.size()); ++j)
    if (!pred_used[j]) m.unmatched_pred.push_back(j);
  return m;
}

PRF recognition_counts(std::span<const RecognizedTable> gt,
                       std::span<const RecognizedTable> pred, const EvalConfig& cfg) {
  const TableMatching m = match_tables(gt, pred, cfg.iou_min);
  long tp = 0, fp = 0, fn = 0;
  for (const TableMatch& pair : m.pairs) {
    const auto g = relation_keys(gt[pair.gt]);
    const auto p = relation_keys(pred[pair.pred]);
    const long both = common(g, p);
    tp += both;
    fn += static_cast<long>(g.size()) - both;
    fp += static_cast<long>(p.size()) - both;
  }
  for (int i : m.unmatched_gt) fn += static_cast<long>(adjacency_relations(gt[i]).size());
  for (int j : m.unmatched_pred) fp += static_cast<long>(adjacency_relations(pred[j]).size());
  return PRF::from_counts(tp, fp, fn);
}

PRF recognition_score(const DocumentTables& gt_doc, const DocumentTables& pred_doc,
                      const EvalConfig& cfg) {
  PRF total = PRF::from_counts(0, 0, 0);
  const std::size_t pages = std::max(gt_doc.size(), pred_doc.size());
  static const std::vector<RecognizedTable> none;
  for (std::size_t p = 0; p < pages; ++p) {
    const auto& g = p < gt_doc.size() ? gt_doc[p] : none;
    const auto& q = p < pred_doc.size() ? pred_doc[p] : none;
    total += recognition_counts(g, q, cfg);
  }
  return total;
}

MeanPRF corpus_average(std::span<const PRF> per_doc) {
  if (per_doc.empty()) throw EmptyCorpus("corpus average over zero documents");
  MeanPRF m;
  for (const PRF& d : per_doc) {
    m.precision += d.precision;
    m.recall += d.recall;
    m.f1 += d.f1;
  }
  const auto n = static_cast<double>(per_doc.size());
  m.precision /= n;
  m.recall /= n;
  m.f1 /= n;
  return m;
}

double wavg_f1(const std::map<double, double>& f1_at_threshold) {
  double num = 0.0, den = 0.0;
  for (const auto& [t, f1] : f1_at_threshold) {
    num += t * f1;
    den += t;
  }
  return den == 0.0 ? 0.0 : num / den;
}

PRF cell_f1_at_iou(const RecognizedTable& gt, const RecognizedTable& pred,
                   double threshold) {
  const auto g = cell_boxes(gt);
  const auto p = cell_boxes(pred);
  const long tp = static_cast<long>(greedy_pairs(g, p, threshold).size());
  return PRF::from_counts(tp, static_cast<long>(p.size()) - tp,
                          static_cast<long>(g.size()) - tp);
}

PRF cell_counts(std::span<const RecognizedTable> gt,
                std::span<const RecognizedTable> pred, double threshold,
                double iou_min) {
  const TableMatching m = match_tables(gt, pred, iou_min);
  PRF total = PRF::from_counts(0, 0, 0);
  for (const TableMatch& pair : m.pairs)
    total += cell_f1_at_iou(gt[pair.gt], pred[pair.pred], threshold);
  for (int i : m.unmatched_gt)
    total += PRF::from_counts(0, 0, static_cast<long>(gt[i].cells.size()));
  for (int j : m.unmatched_pred)
    total += PRF::from_counts(0, static_cast<long>(pred[j].cells.size()), 0);
  return total;
}

PRF tuple_set_f1(const TupleSet& gt, const TupleSet& pred) {
  std::multiset<std::map<std::string, std::string>> remaining;
  for (const Tuple& t : gt.tuples) remaining.insert(trimmed(t.values));
  long tp = 0, fp = 0;
  for (const Tuple& t : pred.tuples) {
    auto it = remaining.find(trimmed(t.values));
    if (it != remaining.end()) {
      ++tp;
      remaining.erase(it);
    } else {
      ++fp;
    }
  }
  return PRF::from_counts(tp, fp, static_cast<long>(remaining.size()));
}

PRF interpretation_score(std::span<const TupleSet> gt_files,
                         std::span<const TupleSet> pred_files) {
  using PageKey = std::pair<std::string, int>;
  struct Page {
    std::vector<const TupleSet*> gt;
    std::vector<const TupleSet*> pred;
  };
  std::map<PageKey, Page> pages;

  auto collect = [&](std::span<const TupleSet> files, bool is_gt) {
    std::set<std::tuple<std::string, int, int>> seen;
    for (const TupleSet& f : files) {
      if (!seen.emplace(f.file_id, f.page_nr, f.table_idx).second)
        throw DuplicateKey("duplicate tuple set " + f.file_id + "_" +
                           std::to_string(f.page_nr) + "_" +
                           std::to_string(f.table_idx) +
                           (is_gt ? " in ground truth" : " in predictions"));
      Page& p = pages[{f.file_id, f.page_nr}];
      (is_gt ? p.gt : p.pred).push_back(&f);
    }
  };
  collect(gt_files, true);
  collect(pred_files, false);

  PRF total = PRF::from_counts(0, 0, 0);
  for (auto& [key, page] : pages) {
    auto by_idx = [](const TupleSet* a, const TupleSet* b) {
      return a->table_idx < b->table_idx;
    };
    std::sort(page.gt.begin(), page.gt.end(), by_idx);
    std::sort(page.pred.begin(), page.pred.end(), by_idx);

    WeightedBipartiteGraph g;
    g.n_left = static_cast<int>(page.gt.size());
    g.n_right = static_cast<int>(page.pred.size());
    std::vector<std::vector<PRF>> scores(page.gt.size());
    for (int i = 0; i < g.n_left; ++i)
      for (int j = 0; j < g.n_right; ++j) {
        scores[i].push_back(tuple_set_f1(*page.gt[i], *page.pred[j]));
        g.edges.push_back({i, j, scores[i][j].f1});
      }
    const Matching m = max_weight_matching(g);
    std::vector<bool> gt_used(page.gt.size(), false), pred_used(page.pred.size(), false);
    for (const auto& [i, j] : m.pairs) {
      total += scores[i][j];
      gt_used[i] = pred_used[j] = true;
    }
    for (int i = 0; i < g.n_left; ++i)
      if (!gt_used[i])
        total += PRF::from_counts(0, 0, static_cast<long>(page.gt[i]->tuples.size()));
    for (int j = 0; j < g.n_right; ++j)
      if (!pred_used[j])
        total += PRF::from_counts(0, static_cast<long>(page.pred[j]->tuples.size()), 0);
  }
  return total;
}

}  // namespace tabgrid
