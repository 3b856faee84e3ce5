#include "weyl/cluster.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "weyl/errors.hpp"
#include "test_util.hpp"

using weyl::KmeansResult;

namespace {

double assignment_total(const std::vector<std::vector<double>>& cost,
                        const std::vector<int>& pick) {
    double s = 0.0;
    for (std::size_t i = 0; i < cost.size(); ++i)
        s += cost[i][static_cast<std::size_t>(pick[i])];
    return s;
}

double brute_force_min(const std::vector<std::vector<double>>& cost) {
    std::vector<std::size_t> perm(cost.size());
    std::iota(perm.begin(), perm.end(), 0u);
    double best = std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) s += cost[i][perm[i]];
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

static void test_kmeans_basic() {
    const std::vector<std::vector<double>> pair = {{0.0, 0.0}, {5.0, 5.0}};
    const KmeansResult two = weyl::kmeans(pair, 2, 1);
    check_true(two.labels[0] != two.labels[1], "two points, two clusters");
    check_near(two.inertia, 0.0, 0.0, "two singleton clusters have zero inertia");

    const std::vector<std::vector<double>> same(5, {1.0, 2.0, 3.0});
    const KmeansResult one = weyl::kmeans(same, 1, 9);
    for (int l : one.labels) check_true(l == 0, "identical points share the cluster");
    check_near(one.inertia, 0.0, 0.0, "degenerate cluster has zero inertia");
    check_true(one.centers[0] == same[0], "center sits on the common point");

    check_throws([&] { weyl::kmeans(pair, 0, 1); }, "k=0 rejected");
    check_throws([&] { weyl::kmeans(pair, 3, 1); }, "k beyond point count rejected");
    check_throws([] { weyl::kmeans({}, 1, 1); }, "empty point set rejected");
    check_throws([] { weyl::kmeans({{1.0}, {1.0, 2.0}}, 1, 1); }, "ragged points rejected");
    check_throws([&] { weyl::kmeans(pair, 1, 1, 0); }, "max_iter 0 rejected");
    std::cout << "test_kmeans_basic passed." << std::endl;
}

static void test_kmeans_line() {
    // Optimal 2-split of {0, 1, 10, 11} pairs the ends; inertia 0.5 + 0.5.
    const std::vector<std::vector<double>> pts = {{0.0}, {1.0}, {10.0}, {11.0}};
    const KmeansResult res = weyl::kmeans(pts, 2, 3);
    check_true(res.labels[0] == res.labels[1] && res.labels[2] == res.labels[3] &&
                   res.labels[0] != res.labels[2],
               "line split groups neighbors");
    check_near(res.inertia, 1.0, 1e-12, "line split inertia");
    std::cout << "test_kmeans_line passed." << std::endl;
}

static void test_kmeans_blobs() {
    TestRng rng(2024);
    std::vector<std::vector<double>> pts;
    std::vector<int> truth;
    for (int blob = 0; blob < 2; ++blob)
        for (int i = 0; i < 60; ++i) {
            std::vector<double> p(3);
            for (double& v : p) v = blob * 10.0 + 0.5 * rng.sym();
            pts.push_back(p);
            truth.push_back(blob);
        }

    const KmeansResult res = weyl::kmeans(pts, 2, 7);
    check_near(weyl::clustering_accuracy(res.labels, truth), 1.0, 0.0,
               "well-separated blobs recovered exactly");

    const KmeansResult again = weyl::kmeans(pts, 2, 7);
    check_true(res.labels == again.labels, "same seed reproduces labels");
    check_near(res.inertia, again.inertia, 0.0, "same seed reproduces inertia");

    const KmeansResult other = weyl::kmeans(pts, 2, 8);
    check_near(weyl::clustering_accuracy(res.labels, other.labels), 1.0, 0.0,
               "different seed finds the same partition here");
    std::cout << "test_kmeans_blobs passed." << std::endl;
}

static void test_assignment_solver() {
    // Unique optimum: rows take columns 1, 0, 2 for total 1 + 2 + 2 = 5.
    const std::vector<std::vector<double>> cost = {
        {4.0, 1.0, 3.0}, {2.0, 0.0, 5.0}, {3.0, 2.0, 2.0}};
    const std::vector<int> pick = weyl::solve_assignment(cost);
    check_true(pick == std::vector<int>({1, 0, 2}), "known 3x3 optimum");
    check_near(assignment_total(cost, pick), 5.0, 0.0, "known 3x3 total");

    TestRng rng(55);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t k = 2 + static_cast<std::size_t>(trial % 4);
        std::vector<std::vector<double>> c(k, std::vector<double>(k));
        for (auto& row : c)
            for (double& v : row) v = std::floor(rng.uniform() * 20.0);
        const std::vector<int> got = weyl::solve_assignment(c);
        std::vector<int> sorted = got;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < k; ++i)
            check_true(sorted[i] == static_cast<int>(i), "result is a permutation");
        check_near(assignment_total(c, got), brute_force_min(c), 1e-9,
                   "solver matches brute force, trial " + std::to_string(trial));
    }

    check_throws([] { weyl::solve_assignment({}); }, "empty cost matrix rejected");
    check_throws([] { weyl::solve_assignment({{1.0, 2.0}}); },
                 "non-square cost matrix rejected");
    std::cout << "test_assignment_solver passed." << std::endl;
}

static void test_clustering_accuracy() {
    const std::vector<int> truth = {0, 0, 1, 1};
    check_near(weyl::clustering_accuracy(truth, truth), 1.0, 0.0, "identity is perfect");
    check_near(weyl::clustering_accuracy({7, 7, -2, -2}, truth), 1.0, 0.0,
               "renamed labels are perfect");
    check_near(weyl::clustering_accuracy({0, 0, 0, 1}, truth), 0.75, 0.0,
               "one swapped point of four");
    check_near(weyl::clustering_accuracy({0, 1, 2, 2}, truth), 0.75, 0.0,
               "extra predicted cluster");
    check_near(weyl::clustering_accuracy({0, 0, 0, 0}, truth), 0.5, 0.0,
               "single predicted cluster");
    check_near(weyl::clustering_accuracy({1, 1, 0, 0}, {5, 5, 5, 9}), 0.75, 0.0,
               "uneven class sizes");

    check_throws([] { weyl::clustering_accuracy({0, 1}, {0}); }, "length mismatch rejected");
    check_throws([] { weyl::clustering_accuracy({}, {}); }, "empty labels rejected");
    std::cout << "test_clustering_accuracy passed." << std::endl;
}

static void test_similarity_matrix() {
    const weyl::DenseMatrix flat = weyl::similarity_matrix({{1.0, 2.0}, {1.0, 2.0}});
    check_near(flat.at(0, 0), 0.0, 0.0, "identical descriptors, zero spread");
    check_near(flat.at(0, 1), 0.0, 0.0, "identical descriptors, constant matrix");

    // 1-D descriptors 0, 3, 7: farthest pair is 7 apart.
    const weyl::DenseMatrix s = weyl::similarity_matrix({{0.0}, {3.0}, {7.0}});
    check_near(s.at(0, 0), 7.0, 1e-12, "diagonal carries the max distance");
    check_near(s.at(0, 1), 4.0, 1e-12, "near pair");
    check_near(s.at(0, 2), 0.0, 1e-12, "farthest pair bottoms out");
    check_near(s.at(1, 2), 3.0, 1e-12, "remaining pair");
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            check_near(s.at(i, j), s.at(j, i), 0.0, "symmetry");
            check_true(s.at(i, i) >= s.at(i, j), "diagonal is the row maximum");
        }

    // Two tight pairs far apart: within-block entries beat cross-block ones.
    const weyl::DenseMatrix blocks = weyl::similarity_matrix(
        {{0.0, 0.0}, {0.1, 0.0}, {5.0, 5.0}, {5.0, 5.1}});
    check_true(blocks.at(0, 1) > blocks.at(0, 2) + 1.0, "block structure visible");
    check_true(blocks.at(2, 3) > blocks.at(1, 3) + 1.0, "second block too");

    check_throws([] { weyl::similarity_matrix({}); }, "empty descriptor list rejected");
    check_throws([] { weyl::similarity_matrix({{1.0}, {1.0, 2.0}}); },
                 "ragged descriptors rejected");
    std::cout << "test_similarity_matrix passed." << std::endl;
}

static void test_pca2() {
    // Dominant x-spread: pc1 is the x axis with positive orientation.
    const std::vector<std::vector<double>> cross = {
        {-2.0, 0.0}, {2.0, 0.0}, {0.0, 0.5}, {0.0, -0.5}};
    const auto c = weyl::pca2(cross);
    check_near(c[0][0], -2.0, 1e-12, "pc1 keeps x of first point");
    check_near(c[1][0], 2.0, 1e-12, "pc1 keeps x of second point");
    check_near(c[2][1], 0.5, 1e-12, "pc2 keeps y of third point");
    check_near(c[3][1], -0.5, 1e-12, "pc2 keeps y of fourth point");

    double var1 = 0.0, var2 = 0.0;
    for (const auto& p : c) {
        var1 += p[0] * p[0];
        var2 += p[1] * p[1];
    }
    check_true(var1 >= var2, "variance ordering");

    // Line along (-3, 1): the oriented direction is (3, -1)/sqrt(10).
    const auto line = weyl::pca2({{-3.0, 1.0}, {3.0, -1.0}, {0.0, 0.0}});
    const double r10 = std::sqrt(10.0);
    check_near(line[0][0], -r10, 1e-12, "sign convention fixes the axis");
    check_near(line[1][0], r10, 1e-12, "opposite end");
    check_near(line[2][0], 0.0, 1e-12, "midpoint");
    for (const auto& p : line)
        check_true(std::abs(p[1]) <= 1e-10, "collinear input has no second coordinate");

    // Collinear in 3-D as well.
    std::vector<std::vector<double>> ray;
    for (int i = 0; i < 6; ++i)
        ray.push_back({1.0 * i, 1.0 * i, 1.0 * i});
    for (const auto& p : weyl::pca2(ray))
        check_true(std::abs(p[1]) <= 1e-10, "3-D ray has no second coordinate");

    // Reordering the input permutes the output the same way.
    TestRng rng(31);
    std::vector<std::vector<double>> cloud;
    for (int i = 0; i < 12; ++i) cloud.push_back(rng.signal(5));
    const auto base = weyl::pca2(cloud);
    std::vector<std::vector<double>> rev(cloud.rbegin(), cloud.rend());
    const auto flipped = weyl::pca2(rev);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        check_near(flipped[i][0], base[cloud.size() - 1 - i][0], 1e-9, "reorder pc1");
        check_near(flipped[i][1], base[cloud.size() - 1 - i][1], 1e-9, "reorder pc2");
    }

    // 1-D input pads the second coordinate with zero.
    const auto thin = weyl::pca2({{0.0}, {2.0}, {4.0}});
    check_near(thin[0][1], 0.0, 0.0, "1-D second coordinate");
    check_near(thin[2][0] - thin[0][0], 4.0, 1e-12, "1-D spread preserved");

    check_throws([] { weyl::pca2({{1.0, 2.0}}); }, "single point rejected");
    check_throws([] { weyl::pca2({{1.0}, {1.0, 2.0}}); }, "ragged points rejected");
    std::cout << "test_pca2 passed." << std::endl;
}

int main() {
    test_kmeans_basic();
    test_kmeans_line();
    test_kmeans_blobs();
    test_assignment_solver();
    test_clustering_accuracy();
    test_similarity_matrix();
    test_pca2();
    return 0;
}
