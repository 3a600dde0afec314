#pragma once

#include <map>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tabgrid/interpreter.hpp"
#include "tabgrid/model.hpp"

namespace tabgrid {

enum class Direction { Right, Down };

struct AdjacencyRelation {
  std::string from_content;
  std::string to_content;
  Direction direction = Direction::Right;
  std::pair<int, int> from_key;  // (row, col) of the origin cell

  // Identity used for comparison: contents and direction, not position.
  auto key() const { return std::tie(from_content, to_content, direction); }
};

struct EvalConfig {
  double iou_min = 0.5;
  std::vector<double> cell_iou_thresholds{0.6, 0.7, 0.8, 0.9};

  void validate() const;
};

struct PRF {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;

  static PRF from_counts(long tp, long fp, long fn);
  PRF& operator+=(const PRF& o);  // adds counts and recomputes ratios
};

struct MeanPRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct TableMatch {
  int gt = 0;
  int pred = 0;
  double iou = 0.0;
};

struct TableMatching {
  std::vector<TableMatch> pairs;
  std::vector<int> unmatched_gt;
  std::vector<int> unmatched_pred;
};

// Right and Down relations from every non-blank cell to its nearest
// non-blank neighbor, skipping blank cells. Right scans the starting row of
// the origin cell, Down its starting column.
std::vector<AdjacencyRelation> adjacency_relations(const RecognizedTable& table);

// Greedy one-to-one matching by descending region IoU, keeping pairs with
// IoU >= iou_min.
TableMatching match_tables(std::span<const RecognizedTable> gt,
                           std::span<const RecognizedTable> pred, double iou_min);

// Relation counts for one page (or any set of tables compared together).
PRF recognition_counts(std::span<const RecognizedTable> gt,
                       std::span<const RecognizedTable> pred,
                       const EvalConfig& cfg);

// A document is a list of pages, each a list of tables; pages are compared
// pairwise by position.
using DocumentTables = std::vector<std::vector<RecognizedTable>>;

PRF recognition_score(const DocumentTables& gt_doc, const DocumentTables& pred_doc,
                      const EvalConfig& cfg);

// Mean of per-document precision, recall and F1. Throws EmptyCorpus.
MeanPRF corpus_average(std::span<const PRF> per_doc);

// Threshold-weighted mean of F1 values; 0 for an empty map.
double wavg_f1(const std::map<double, double>& f1_at_threshold);

// Greedy one-to-one cell matching by descending IoU; pairs at or above
// `threshold` are true positives.
PRF cell_f1_at_iou(const RecognizedTable& gt, const RecognizedTable& pred,
                   double threshold);

// Cell counts for one page at one threshold: matched tables contribute their
// cell matching, unmatched tables all of their cells.
PRF cell_counts(std::span<const RecognizedTable> gt,
                std::span<const RecognizedTable> pred, double threshold,
                double iou_min);

// Exact (trimmed) value-map equality, each gt tuple matched at most once.
PRF tuple_set_f1(const TupleSet& gt, const TupleSet& pred);

// Per-page maximum-weight matching of tuple sets weighted by tuple F1; counts
// pooled over all pages. Throws DuplicateKey when two sets on either side
// share (file_id, page_nr, table_idx).
PRF interpretation_score(std::span<const TupleSet> gt_files,
                         std::span<const TupleSet> pred_files);

}  // namespace tabgrid
