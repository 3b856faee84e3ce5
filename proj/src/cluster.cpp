#include "weyl/cluster.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

constexpr int kRestarts = 10;

std::size_t checked_dim(const std::vector<std::vector<double>>& points, const char* who) {
    if (points.empty()) throw UsageError(std::string(who) + ": no points");
    const std::size_t dim = points[0].size();
    if (dim == 0) throw UsageError(std::string(who) + ": zero-dimensional points");
    for (const auto& p : points)
        if (p.size() != dim)
            throw UsageError(std::string(who) + ": points have mixed dimensions");
    return dim;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Nearest center, lowest index on ties.
int nearest_center(const std::vector<double>& p,
                   const std::vector<std::vector<double>>& centers) {
    int best = 0;
    double best_d = sq_dist(p, centers[0]);
    for (std::size_t j = 1; j < centers.size(); ++j) {
        const double d = sq_dist(p, centers[j]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(j);
        }
    }
    return best;
}

KmeansResult lloyd_once(const std::vector<std::vector<double>>& points, std::size_t k,
                        std::size_t first_center, int max_iter) {
    const std::size_t n = points.size();
    const std::size_t dim = points[0].size();

    // Greedy farthest-point start: after the seeded first pick, each new
    // center is the point farthest from the ones chosen so far.
    std::vector<std::vector<double>> centers;
    centers.reserve(k);
    centers.push_back(points[first_center]);
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (centers.size() < k) {
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], sq_dist(points[i], centers.back()));
            if (nearest[i] > far_d) {
                far_d = nearest[i];
                far = i;
            }
        }
        centers.push_back(points[far]);
    }

    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = nearest_center(points[i], centers);

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        // A cluster can drain when centers coincide; hand it the point
        // farthest from its current center, from a cluster that can spare one.
        std::vector<std::size_t> counts(k, 0);
        for (int l : labels) ++counts[static_cast<std::size_t>(l)];
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            std::size_t steal = n;
            double steal_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t owner = static_cast<std::size_t>(labels[i]);
                if (counts[owner] < 2) continue;
                const double d = sq_dist(points[i], centers[owner]);
                if (d > steal_d) {
                    steal_d = d;
                    steal = i;
                }
            }
            if (steal == n) continue;  // k > distinct points; leave it empty
            --counts[static_cast<std::size_t>(labels[steal])];
            labels[steal] = static_cast<int>(c);
            ++counts[c];
        }

        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            auto& s = sums[static_cast<std::size_t>(labels[i])];
            for (std::size_t d = 0; d < dim; ++d) s[d] += points[i][d];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;  // stays where it was
            for (double& v : sums[c]) v /= static_cast<double>(counts[c]);
            centers[c] = std::move(sums[c]);
        }

        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            const int l = nearest_center(points[i], centers);
            if (l != labels[i]) {
                labels[i] = l;
                changed = true;
            }
        }
        if (!changed) {
            ++iter;
            break;
        }
    }

    KmeansResult res;
    res.labels = std::move(labels);
    res.centers = std::move(centers);
    res.iterations = iter;
    for (std::size_t i = 0; i < n; ++i)
        res.inertia += sq_dist(points[i], res.centers[static_cast<std::size_t>(res.labels[i])]);
    return res;
}

}  // namespace

KmeansResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k,
                    std::uint64_t seed, int max_iter) {
    checked_dim(points, "kmeans");
    const std::size_t n = points.size();
    if (k == 0 || k > n)
        throw UsageError("kmeans: k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(n) + "]");
    if (max_iter < 1) throw UsageError("kmeans: max_iter must be positive");

    std::mt19937_64 gen(seed);
    KmeansResult best;
    bool have_best = false;
    for (int r = 0; r < kRestarts; ++r) {
        KmeansResult cur = lloyd_once(points, k, static_cast<std::size_t>(gen() % n), max_iter);
        if (!have_best || cur.inertia < best.inertia) {
            best = std::move(cur);
            have_best = true;
        }
    }
    return best;
}

std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    if (n == 0) throw UsageError("assignment: empty cost matrix");
    for (const auto& row : cost)
        if (row.size() != n) throw UsageError("assignment: cost matrix must be square");

    const double inf = std::numeric_limits<double>::infinity();
    // Shortest-augmenting-path form with row/column potentials; p[j] is the
    // row matched to column j, 0 meaning unmatched (1-based).
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
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
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> row_to_col(n, -1);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = static_cast<int>(j - 1);
    return row_to_col;
}

namespace {

// Renames arbitrary label values to 0..count-1, ordered by value.
std::pair<std::vector<std::size_t>, std::size_t> compact_labels(const std::vector<int>& v) {
    std::map<int, std::size_t> ids;
    for (int l : v) ids.emplace(l, 0);
    std::size_t next = 0;
    for (auto& [label, id] : ids) id = next++;
    std::vector<std::size_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = ids[v[i]];
    return {out, next};
}

}  // namespace

double clustering_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size())
        throw UsageError("clustering accuracy: " + std::to_string(pred.size()) +
                         " predictions vs " + std::to_string(truth.size()) + " labels");
    if (pred.empty()) throw UsageError("clustering accuracy: no labels");

    const auto [p, np] = compact_labels(pred);
    const auto [t, nt] = compact_labels(truth);
    const std::size_t k = std::max(np, nt);

    std::vector<std::vector<double>> overlap(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < p.size(); ++i) overlap[p[i]][t[i]] += 1.0;

    // Maximize matched counts by minimizing (n - overlap).
    const double total = static_cast<double>(pred.size());
    std::vector<std::vector<double>> cost(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) cost[i][j] = total - overlap[i][j];
    const std::vector<int> match = solve_assignment(cost);

    double correct = 0.0;
    for (std::size_t i = 0; i < k; ++i) correct += overlap[i][static_cast<std::size_t>(match[i])];
    return correct / total;
}

DenseMatrix similarity_matrix(const std::vector<std::vector<double>>& descriptors) {
    checked_dim(descriptors, "similarity matrix");
    const std::size_t n = descriptors.size();
    DenseMatrix dist(n);
    double max_d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::sqrt(sq_dist(descriptors[i], descriptors[j]));
            dist.at(i, j) = d;
            dist.at(j, i) = d;
            max_d = std::max(max_d, d);
        }
    DenseMatrix sim(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sim.at(i, j) = max_d - dist.at(i, j);
    return sim;
}

std::vector<std::array<double, 2>> pca2(const std::vector<std::vector<double>>& points) {
    const std::size_t n = points.size();
    if (n < 2) throw UsageError("pca2 needs at least 2 points");
    const std::size_t dim = checked_dim(points, "pca2");

    Eigen::MatrixXd x(n, dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < dim; ++j) x(static_cast<Eigen::Index>(i),
                                                static_cast<Eigen::Index>(j)) = points[i][j];
    x.rowwise() -= x.colwise().mean().eval();

    const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw InternalError("pca2: eigendecomposition failed");

    // Eigenvalues come back ascending; principal directions are the last
    // columns. Flip each so its largest-magnitude entry is positive.
    const auto oriented = [&](Eigen::Index col) {
        Eigen::VectorXd dir = es.eigenvectors().col(col);
        Eigen::Index at = 0;
        dir.cwiseAbs().maxCoeff(&at);
        if (dir(at) < 0.0) dir = -dir;
        return dir;
    };
    const Eigen::VectorXd pc1 = oriented(static_cast<Eigen::Index>(dim) - 1);
    const Eigen::VectorXd pc2 = dim >= 2 ? oriented(static_cast<Eigen::Index>(dim) - 2)
                                         : Eigen::VectorXd::Zero(1).eval();

    std::vector<std::array<double, 2>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = x.row(static_cast<Eigen::Index>(i));
        out[i] = {row.dot(pc1), row.dot(pc2)};
    }
    return out;
}

}  // namespace weyl
