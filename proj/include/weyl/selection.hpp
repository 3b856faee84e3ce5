#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "weyl/bit_tuple.hpp"
#include "weyl/fwht.hpp"

namespace weyl {

// Signals with integer class labels, one label per signal.
struct LabeledSignalSet {
    std::vector<Signal> signals;
    std::vector<int> labels;

    // Common bit width; UsageError when empty, ragged, or mislabeled.
    int validate() const;
};

// Supervised coordinate scores: builds M = sum_i (p_i - q_i)(p_i + q_i)^T
// over paired columns of the two classes and returns |coefficient of M| at
// every even-overlap index, ordered like enumerate_symmetric_indices(m).
// The cross terms cancel on symmetric D, so the result does not depend on
// how the columns were paired.
std::vector<double> discriminability_scores(const std::vector<Signal>& plus,
                                            const std::vector<Signal>& minus);

// Coordinates ranked by descending score; equal scores keep canonical
// index order.
struct CoordRanking {
    std::vector<CoeffIndex> coords;
    std::vector<double> scores;
};

// Top k of a full score vector laid out in canonical enumeration order.
CoordRanking select_top_k(int m, const std::vector<double>& scores, std::size_t k);

// One-vs-all ranking for any number of classes: each class is scored
// against the rest using mean scatter matrices (class sizes may differ),
// every coordinate keeps its best score across classes, and the union is
// re-truncated to k. With two classes this reproduces the two-set ranking.
CoordRanking select_multiclass(const LabeledSignalSet& data, std::size_t k);

// Signed coefficients of y at the selected coordinates, each in O(2^m)
// via the quadratic form; no full spectrum is computed.
std::vector<double> project_onto_coords(const Signal& y,
                                        const std::vector<CoeffIndex>& coords);

// 1-nearest-neighbor under Euclidean distance; ties go to the lowest
// training index. Returns one predicted label per test row.
std::vector<int> nn_classify(const std::vector<std::vector<double>>& train_features,
                             const std::vector<int>& train_labels,
                             const std::vector<std::vector<double>>& test_features,
                             unsigned threads = 0);

// CSV export, header "a,b,score", one ranked coordinate per row.
void write_ranking_csv(std::ostream& out, const CoordRanking& ranking);

}  // namespace weyl
