#include "weyl/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>

#include "weyl/csv.hpp"
#include "weyl/dense.hpp"
#include "weyl/errors.hpp"
#include "weyl/parallel.hpp"
#include "weyl/weyl_transform.hpp"

namespace weyl {

int LabeledSignalSet::validate() const {
    if (signals.empty()) throw UsageError("labeled set: no signals");
    if (labels.size() != signals.size())
        throw UsageError("labeled set: " + std::to_string(signals.size()) + " signals but " +
                         std::to_string(labels.size()) + " labels");
    const int m = signals.front().m;
    for (const Signal& y : signals)
        if (y.m != m) throw UsageError("labeled set: mixed signal widths");
    return m;
}

namespace {

int common_width(const std::vector<Signal>& plus, const std::vector<Signal>& minus) {
    if (plus.empty() || minus.empty()) throw UsageError("selection: empty class");
    if (plus.size() != minus.size())
        throw UsageError("selection: class sizes " + std::to_string(plus.size()) + " and " +
                         std::to_string(minus.size()) +
                         " differ; column pairing is undefined");
    const int m = plus.front().m;
    for (const Signal& y : plus)
        if (y.m != m) throw UsageError("selection: mixed signal widths");
    for (const Signal& y : minus)
        if (y.m != m) throw UsageError("selection: mixed signal widths");
    return m;
}

// |coefficient of M| at the even-overlap indices, enumeration order.
std::vector<double> scores_of_matrix(int m, const DenseMatrix& M) {
    const WeylSpectrum s = weyl_of_matrix(M);
    const auto indices = enumerate_symmetric_indices(m);
    std::vector<double> scores;
    scores.reserve(indices.size());
    for (const CoeffIndex& idx : indices)
        scores.push_back(std::abs(s.at(idx.a.value(), idx.b.value())));
    return scores;
}

void add_outer(DenseMatrix& M, const std::vector<double>& u, const std::vector<double>& v,
               double weight) {
    const std::size_t n = M.n;
    for (std::size_t r = 0; r < n; ++r) {
        const double ur = weight * u[r];
        for (std::size_t c = 0; c < n; ++c) M.at(r, c) += ur * v[c];
    }
}

}  // namespace

std::vector<double> discriminability_scores(const std::vector<Signal>& plus,
                                            const std::vector<Signal>& minus) {
    const int m = common_width(plus, minus);
    const std::size_t n = std::size_t{1} << m;

    DenseMatrix M(n);
    std::vector<double> diff(n), sum(n);
    for (std::size_t i = 0; i < plus.size(); ++i) {
        for (std::size_t v = 0; v < n; ++v) {
            diff[v] = plus[i].samples[v] - minus[i].samples[v];
            sum[v] = plus[i].samples[v] + minus[i].samples[v];
        }
        add_outer(M, diff, sum, 1.0);
    }
    return scores_of_matrix(m, M);
}

CoordRanking select_top_k(int m, const std::vector<double>& scores, std::size_t k) {
    const auto indices = enumerate_symmetric_indices(m);
    if (scores.size() != indices.size())
        throw UsageError("ranking: got " + std::to_string(scores.size()) +
                         " scores, expected " + std::to_string(indices.size()));
    if (k < 1 || k > indices.size())
        throw UsageError("ranking: k = " + std::to_string(k) + " out of range 1.." +
                         std::to_string(indices.size()));

    std::vector<std::size_t> order(indices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&scores](std::size_t i, std::size_t j) {
        if (scores[i] != scores[j]) return scores[i] > scores[j];
        return i < j;  // enumeration order is ascending flat index
    });

    CoordRanking r;
    r.coords.reserve(k);
    r.scores.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        r.coords.push_back(indices[order[i]]);
        r.scores.push_back(scores[order[i]]);
    }
    return r;
}

CoordRanking select_multiclass(const LabeledSignalSet& data, std::size_t k) {
    const int m = data.validate();
    const std::size_t n = std::size_t{1} << m;
    const std::set<int> distinct(data.labels.begin(), data.labels.end());
    if (distinct.size() < 2) throw UsageError("selection: need at least two classes");

    // Mean scatter matrix per class; the one-vs-all difference of means
    // keeps the two-class ranking when sizes happen to be equal.
    std::vector<double> best(symmetric_index_count(m), 0.0);
    for (int label : distinct) {
        DenseMatrix inside(n), outside(n);
        std::size_t n_in = 0, n_out = 0;
        for (std::size_t i = 0; i < data.signals.size(); ++i) {
            const bool is_in = data.labels[i] == label;
            add_outer(is_in ? inside : outside, data.signals[i].samples,
                      data.signals[i].samples, 1.0);
            (is_in ? n_in : n_out) += 1;
        }
        DenseMatrix diff(n);
        for (std::size_t e = 0; e < diff.data.size(); ++e)
            diff.data[e] = inside.data[e] / static_cast<double>(n_in) -
                           outside.data[e] / static_cast<double>(n_out);
        const std::vector<double> scores = scores_of_matrix(m, diff);
        for (std::size_t i = 0; i < best.size(); ++i) best[i] = std::max(best[i], scores[i]);
    }
    return select_top_k(m, best, k);
}

std::vector<double> project_onto_coords(const Signal& y,
                                        const std::vector<CoeffIndex>& coords) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(y.size()));
    std::vector<double> out;
    out.reserve(coords.size());
    for (const CoeffIndex& idx : coords) {
        if (idx.a.m() != y.m)
            throw UsageError("projection: coordinate width does not match the signal");
        if (bit_dot(idx.a, idx.b) != 0)
            throw UsageError("projection: (" + to_string(idx.a) + "," + to_string(idx.b) +
                             ") has odd overlap; its coefficient is structurally zero");
        out.push_back(scale *
                      signed_quadratic_form(y.samples, idx.a.value(), idx.b.value()));
    }
    return out;
}

std::vector<int> nn_classify(const std::vector<std::vector<double>>& train_features,
                             const std::vector<int>& train_labels,
                             const std::vector<std::vector<double>>& test_features,
                             unsigned threads) {
    if (train_features.empty()) throw UsageError("classification: empty training set");
    if (train_labels.size() != train_features.size())
        throw UsageError("classification: train features and labels differ in length");
    const std::size_t dim = train_features.front().size();
    for (const auto& f : train_features)
        if (f.size() != dim) throw UsageError("classification: ragged training features");
    for (const auto& f : test_features)
        if (f.size() != dim) throw UsageError("classification: ragged test features");

    if (threads == 0) threads = default_thread_count();
    std::vector<int> predicted(test_features.size());
    parallel_for(test_features.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            double best = 0.0;
            std::size_t best_i = 0;
            for (std::size_t i = 0; i < train_features.size(); ++i) {
                double d = 0.0;
                for (std::size_t f = 0; f < dim; ++f) {
                    const double delta = test_features[t][f] - train_features[i][f];
                    d += delta * delta;
                }
                if (i == 0 || d < best) {
                    best = d;
                    best_i = i;
                }
            }
            predicted[t] = train_labels[best_i];
        }
    });
    return predicted;
}

void write_ranking_csv(std::ostream& out, const CoordRanking& ranking) {
    out << "a,b,score\n";
    for (std::size_t i = 0; i < ranking.coords.size(); ++i)
        out << ranking.coords[i].a.value() << "," << ranking.coords[i].b.value() << ","
            << format_double(ranking.scores[i]) << "\n";
}

}  // namespace weyl
