#include "weyl/pipeline.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "weyl/cluster.hpp"
#include "weyl/csv.hpp"
#include "weyl/errors.hpp"
#include "weyl/image.hpp"
#include "weyl/parallel.hpp"
#include "weyl/selection.hpp"

namespace weyl {

namespace {

using Mode = ExperimentConfig::Mode;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return std::round(ms * 1000.0) / 1000.0;
}

// Rethrows component errors with the pipeline stage prepended, keeping
// the category (and therefore the exit code).
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ResourceError& e) {
        throw ResourceError(std::string(name) + ": " + e.what());
    } catch (const UsageError& e) {
        throw UsageError(std::string(name) + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(std::string(name) + ": " + e.what());
    } catch (const InternalError& e) {
        throw InternalError(std::string(name) + ": " + e.what());
    }
}

unsigned worker_count(int threads) {
    return threads <= 0 ? default_thread_count() : static_cast<unsigned>(threads);
}

// parallel_for with the first worker exception carried back to the caller
// instead of terminating the process.
template <typename F>
void parallel_indexed(std::size_t n, unsigned workers, F&& body) {
    std::exception_ptr err;
    std::mutex err_mu;
    parallel_for(n, workers, [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
        }
    });
    if (err) std::rethrow_exception(err);
}

void validate_config(const ExperimentConfig& c) {
    if (c.images.empty()) throw UsageError("no input images");
    if (c.patches_per_texture == 0) throw UsageError("need at least one patch per texture");
    if (c.normalization != "none" && c.normalization != "mean" &&
        c.normalization != "unitnorm")
        throw UsageError("unknown normalization '" + c.normalization +
                         "' (none, mean, unitnorm)");
    if (c.mode == Mode::kCluster) {
        if (c.patch_size == 0 || c.patch_size % 4 != 0)
            throw UsageError("descriptor patches need a side divisible by 4, got " +
                             std::to_string(c.patch_size));
    } else {
        if (c.images.size() < 2) throw UsageError("classification needs at least two textures");
        if (!std::has_single_bit(c.patch_size) || c.patch_size < 2)
            throw UsageError("classification patches need a power-of-two side >= 2, got " +
                             std::to_string(c.patch_size));
        if (c.patch_size > 32)
            throw ResourceError("classification patch side capped at 32 (the coordinate "
                                "scoring is quadratic in the patch area)");
        if (c.train_per_class == 0)
            throw UsageError("need at least one training patch per class");
        if (c.train_per_class >= c.patches_per_texture)
            throw UsageError("train_per_class=" + std::to_string(c.train_per_class) +
                             " leaves no test patches out of " +
                             std::to_string(c.patches_per_texture));
        if (c.k_coeffs == 0) throw UsageError("k_coeffs must be positive");
        for (const std::size_t k : c.sweep)
            if (k == 0) throw UsageError("sweep entries must be positive");
    }
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << body;
    if (!out) throw UsageError("write failed: " + path);
}

std::string report_stem(const std::string& path) {
    const std::string suffix = ".json";
    if (path.size() > suffix.size() &&
        path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return path.substr(0, path.size() - suffix.size());
    return path;
}

struct SampledPatches {
    std::vector<std::vector<double>> patches;
    std::vector<int> labels;  // image index
    std::vector<std::pair<std::size_t, std::size_t>> positions;
};

SampledPatches sample_all(const std::vector<GrayImage>& images, const ExperimentConfig& c,
                          const std::vector<std::uint64_t>& image_seeds) {
    SampledPatches out;
    const std::size_t total = images.size() * c.patches_per_texture;
    out.patches.reserve(total);
    out.labels.reserve(total);
    out.positions.reserve(total);
    for (std::size_t i = 0; i < images.size(); ++i) {
        PatchSet set =
            sample_patches(images[i], c.patches_per_texture, c.patch_size, image_seeds[i]);
        for (std::size_t j = 0; j < set.patches.size(); ++j) {
            normalize_patch(set.patches[j], c.normalization);
            out.patches.push_back(std::move(set.patches[j]));
            out.labels.push_back(static_cast<int>(i));
            out.positions.push_back(set.positions[j]);
        }
    }
    return out;
}

nlohmann::json config_echo(const ExperimentConfig& c) {
    nlohmann::json cfg;
    cfg["images"] = c.images;
    cfg["patch_size"] = c.patch_size;
    cfg["patches_per_texture"] = c.patches_per_texture;
    cfg["seed"] = c.seed;
    cfg["include_structural_zeros"] = c.include_structural_zeros;
    cfg["normalization"] = c.normalization;
    if (c.mode == Mode::kCluster) {
        cfg["clusters"] = c.clusters == 0 ? c.images.size() : c.clusters;
    } else {
        cfg["train_per_class"] = c.train_per_class;
        cfg["k_coeffs"] = c.k_coeffs;
        cfg["sweep"] = c.sweep;
    }
    return cfg;
}

void run_cluster_mode(const ExperimentConfig& c, const SampledPatches& data,
                      std::uint64_t algo_seed, nlohmann::json& report,
                      nlohmann::json& timings) {
    const ClassPartition partition = default_partition(4);

    auto t0 = Clock::now();
    const std::vector<std::vector<double>> descriptors = stage("describe", [&] {
        return batch_descriptors(data.patches, partition, c.include_structural_zeros,
                                 c.threads);
    });
    timings["describe"] = ms_since(t0);

    const std::size_t k = c.clusters == 0 ? c.images.size() : c.clusters;
    t0 = Clock::now();
    const KmeansResult km =
        stage("cluster", [&] { return kmeans(descriptors, k, algo_seed); });
    timings["cluster"] = ms_since(t0);

    t0 = Clock::now();
    const auto coords = stage("project", [&] { return pca2(descriptors); });
    timings["project"] = ms_since(t0);

    std::vector<std::size_t> sizes(k, 0);
    for (const int l : km.labels) ++sizes[static_cast<std::size_t>(l)];

    nlohmann::json results;
    results["accuracy"] = clustering_accuracy(km.labels, data.labels);
    results["inertia"] = km.inertia;
    results["iterations"] = km.iterations;
    results["descriptor_length"] = descriptors[0].size();
    results["n_patches"] = data.patches.size();
    results["n_textures"] = c.images.size();
    results["cluster_sizes"] = sizes;
    report["results"] = results;

    if (c.report_path.empty()) return;
    const std::string stem = report_stem(c.report_path);
    const std::string pca_path = stem + "_pca.csv";
    const std::string desc_path = stem + "_descriptors.csv";

    std::ostringstream pca_csv;
    pca_csv << "pc1,pc2,cluster,truth\n";
    for (std::size_t i = 0; i < coords.size(); ++i)
        pca_csv << format_double(coords[i][0]) << "," << format_double(coords[i][1]) << ","
                << km.labels[i] << "," << data.labels[i] << "\n";
    write_text(pca_path, pca_csv.str());

    std::ostringstream desc_csv;
    write_descriptors_csv(desc_csv, data.labels, data.positions, descriptors);
    write_text(desc_path, desc_csv.str());

    report["artifacts"] = {{"pca_csv", pca_path}, {"descriptors_csv", desc_path}};
}

void run_classify_mode(const ExperimentConfig& c, const SampledPatches& data,
                       nlohmann::json& report, nlohmann::json& timings) {
    const int m = 2 * std::countr_zero(c.patch_size);
    const unsigned workers = worker_count(c.threads);

    auto t0 = Clock::now();
    LabeledSignalSet train;
    std::vector<Signal> test_signals;
    std::vector<int> test_labels;
    stage("split", [&] {
        for (std::size_t i = 0; i < data.patches.size(); ++i) {
            Signal sig(m, vectorize_tile(data.patches[i], c.patch_size));
            const bool is_train = i % c.patches_per_texture < c.train_per_class;
            if (is_train) {
                train.signals.push_back(std::move(sig));
                train.labels.push_back(data.labels[i]);
            } else {
                test_signals.push_back(std::move(sig));
                test_labels.push_back(data.labels[i]);
            }
        }
    });
    timings["split"] = ms_since(t0);

    std::size_t k_max = c.k_coeffs;
    for (const std::size_t k : c.sweep) k_max = std::max(k_max, k);

    t0 = Clock::now();
    const CoordRanking ranking =
        stage("select", [&] { return select_multiclass(train, k_max); });
    timings["select"] = ms_since(t0);

    // Project everything once at the widest K; smaller counts are prefixes
    // of the same ranking.
    t0 = Clock::now();
    std::vector<std::vector<double>> train_feats(train.signals.size());
    std::vector<std::vector<double>> test_feats(test_signals.size());
    stage("project", [&] {
        parallel_indexed(train.signals.size(), workers, [&](std::size_t i) {
            train_feats[i] = project_onto_coords(train.signals[i], ranking.coords);
        });
        parallel_indexed(test_signals.size(), workers, [&](std::size_t i) {
            test_feats[i] = project_onto_coords(test_signals[i], ranking.coords);
        });
    });
    timings["project"] = ms_since(t0);

    const auto truncate = [](const std::vector<std::vector<double>>& feats, std::size_t k) {
        std::vector<std::vector<double>> out(feats.size());
        for (std::size_t i = 0; i < feats.size(); ++i)
            out[i].assign(feats[i].begin(), feats[i].begin() + static_cast<long>(k));
        return out;
    };
    const auto accuracy_at = [&](std::size_t k) {
        const std::vector<int> pred = nn_classify(truncate(train_feats, k), train.labels,
                                                  truncate(test_feats, k), workers);
        std::size_t hits = 0;
        for (std::size_t i = 0; i < pred.size(); ++i)
            if (pred[i] == test_labels[i]) ++hits;
        return static_cast<double>(hits) / static_cast<double>(pred.size());
    };

    t0 = Clock::now();
    const double accuracy = stage("classify", [&] { return accuracy_at(c.k_coeffs); });
    timings["classify"] = ms_since(t0);

    nlohmann::json sweep_rows = nlohmann::json::array();
    if (!c.sweep.empty()) {
        t0 = Clock::now();
        stage("sweep", [&] {
            for (const std::size_t k : c.sweep)
                sweep_rows.push_back({{"k", k}, {"accuracy", accuracy_at(k)}});
        });
        timings["sweep"] = ms_since(t0);
    }

    nlohmann::json selected = nlohmann::json::array();
    for (std::size_t i = 0; i < c.k_coeffs; ++i)
        selected.push_back({ranking.coords[i].a.value(), ranking.coords[i].b.value()});

    nlohmann::json results;
    results["accuracy"] = accuracy;
    results["k_coeffs"] = c.k_coeffs;
    results["selected_coords"] = selected;
    results["signal_m"] = m;
    results["n_train"] = train.signals.size();
    results["n_test"] = test_signals.size();
    if (!c.sweep.empty()) results["sweep"] = sweep_rows;
    report["results"] = results;

    if (c.report_path.empty()) return;
    const std::string stem = report_stem(c.report_path);
    const std::string ranking_path = stem + "_ranking.csv";
    std::ostringstream ranking_csv;
    write_ranking_csv(ranking_csv, ranking);
    write_text(ranking_path, ranking_csv.str());
    report["artifacts"]["ranking_csv"] = ranking_path;

    if (!c.sweep.empty()) {
        const std::string sweep_path = stem + "_sweep.csv";
        std::ostringstream sweep_csv;
        sweep_csv << "k,accuracy\n";
        for (const auto& row : sweep_rows)
            sweep_csv << row["k"].get<std::size_t>() << ","
                      << format_double(row["accuracy"].get<double>()) << "\n";
        write_text(sweep_path, sweep_csv.str());
        report["artifacts"]["sweep_csv"] = sweep_path;
    }
}

}  // namespace

void normalize_patch(std::vector<double>& patch, const std::string& mode) {
    if (mode == "none") return;
    if (mode != "mean" && mode != "unitnorm")
        throw UsageError("unknown normalization '" + mode + "' (none, mean, unitnorm)");
    if (patch.empty()) throw UsageError("normalize: empty patch");

    const double mean = std::accumulate(patch.begin(), patch.end(), 0.0) /
                        static_cast<double>(patch.size());
    for (double& v : patch) v -= mean;
    if (mode == "unitnorm") {
        double norm_sq = 0.0;
        for (const double v : patch) norm_sq += v * v;
        if (norm_sq > 0.0) {
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (double& v : patch) v *= inv;
        }
    }
}

std::vector<double> vectorize_tile(const std::vector<double>& patch, std::size_t side) {
    if (side == 0 || patch.size() != side * side)
        throw UsageError("vectorize: patch with " + std::to_string(patch.size()) +
                         " entries is not " + std::to_string(side) + "x" +
                         std::to_string(side));
    std::vector<double> y(patch.size());
    for (std::size_t col = 0; col < side; ++col)
        for (std::size_t row = 0; row < side; ++row)
            y[col * side + row] = patch[row * side + col];
    return y;
}

std::vector<std::vector<double>> batch_descriptors(
    const std::vector<std::vector<double>>& patches, const ClassPartition& partition,
    bool include_structural_zeros, int threads) {
    std::vector<std::vector<double>> out(patches.size());
    parallel_indexed(patches.size(), worker_count(threads), [&](std::size_t i) {
        out[i] = patch_descriptor(patches[i], partition, include_structural_zeros).values;
    });
    return out;
}

void write_descriptors_csv(std::ostream& out, const std::vector<int>& labels,
                           const std::vector<std::pair<std::size_t, std::size_t>>& positions,
                           const std::vector<std::vector<double>>& descriptors) {
    if (labels.size() != descriptors.size() || positions.size() != descriptors.size())
        throw UsageError("descriptor CSV: column lengths disagree");
    out << "texture,row,col";
    if (!descriptors.empty())
        for (std::size_t i = 0; i < descriptors[0].size(); ++i) out << ",c" << i;
    out << "\n";
    for (std::size_t i = 0; i < descriptors.size(); ++i) {
        out << labels[i] << "," << positions[i].first << "," << positions[i].second;
        for (const double v : descriptors[i]) out << "," << format_double(v);
        out << "\n";
    }
}

nlohmann::json run_experiment(const ExperimentConfig& c) {
    stage("config", [&] { validate_config(c); });

    nlohmann::json report;
    report["schema"] = 1;
    report["mode"] = c.mode == Mode::kCluster ? "cluster" : "classify";
    report["config"] = config_echo(c);
    nlohmann::json timings;

    // All derived randomness flows from the one seed, in a fixed order:
    // per-image sampling seeds first, then the algorithm seed.
    std::mt19937_64 master(c.seed);
    std::vector<std::uint64_t> image_seeds(c.images.size());
    for (auto& s : image_seeds) s = master();
    const std::uint64_t algo_seed = master();

    auto t0 = Clock::now();
    const std::vector<GrayImage> images = stage("load", [&] {
        std::vector<GrayImage> out;
        out.reserve(c.images.size());
        for (const std::string& path : c.images) out.push_back(load_pgm(path));
        return out;
    });
    timings["load"] = ms_since(t0);

    t0 = Clock::now();
    const SampledPatches data =
        stage("sample", [&] { return sample_all(images, c, image_seeds); });
    timings["sample"] = ms_since(t0);

    if (c.mode == Mode::kCluster)
        run_cluster_mode(c, data, algo_seed, report, timings);
    else
        run_classify_mode(c, data, report, timings);

    report["timings_ms"] = timings;
    if (!c.report_path.empty())
        write_text(c.report_path, report.dump(2) + "\n");
    return report;
}

}  // namespace weyl
