#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "weyl/dense.hpp"

namespace weyl {

struct KmeansResult {
    std::vector<int> labels;
    std::vector<std::vector<double>> centers;
    double inertia = 0.0;  // sum of squared distances to the final centers
    int iterations = 0;    // Lloyd steps taken by the winning restart
};

// Lloyd's algorithm with greedy farthest-point initialization. Runs a
// fixed number of restarts (different random first centers drawn from the
// seed) and keeps the lowest-inertia result. Deterministic given the seed.
KmeansResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k,
                    std::uint64_t seed, int max_iter = 100);

// Minimum-cost perfect assignment on a square cost matrix, O(n^3).
// Returns the column chosen for each row.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

// Fraction of points whose predicted cluster maps to their true class
// under the best one-to-one cluster-to-class assignment. Invariant under
// relabeling of either side.
double clustering_accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

// Entry (i,j) = (largest pairwise distance) - euclidean(d_i, d_j), so
// bigger means more alike and the diagonal is maximal.
DenseMatrix similarity_matrix(const std::vector<std::vector<double>>& descriptors);

// Mean-centered projection onto the top two principal directions, in
// decreasing-variance order. Each direction is oriented so its
// largest-magnitude component is positive, which pins the otherwise
// arbitrary sign. One-dimensional input gets a zero second coordinate.
std::vector<std::array<double, 2>> pca2(const std::vector<std::vector<double>>& points);

}  // namespace weyl
