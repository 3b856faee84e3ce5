#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "weyl/pooling.hpp"

namespace weyl {

// One desk-scale texture experiment. `images` are PGM paths, one texture
// per file; ground-truth labels are the file order.
struct ExperimentConfig {
    enum class Mode { kCluster, kClassify };

    Mode mode = Mode::kCluster;
    std::vector<std::string> images;
    std::size_t patch_size = 16;
    std::size_t patches_per_texture = 500;
    std::uint64_t seed = 0;
    bool include_structural_zeros = false;
    std::string normalization = "none";  // none | mean | unitnorm
    // Cluster mode only.
    std::size_t clusters = 0;  // 0 means one per image
    // Classify mode only.
    std::size_t train_per_class = 20;
    std::size_t k_coeffs = 1;
    std::vector<std::size_t> sweep;  // extra coordinate counts for a curve
    int threads = 0;                 // 0 picks the hardware concurrency
    std::string report_path;         // JSON destination; empty writes nothing
};

// In-place intensity adjustment: "none" leaves the patch alone, "mean"
// subtracts the patch mean, "unitnorm" subtracts the mean and scales to
// unit length (all-constant patches stay zero).
void normalize_patch(std::vector<double>& patch, const std::string& mode);

// Columnwise vectorization of a row-major square tile (leading index bits
// are the column), the layout the symmetry maps assume.
std::vector<double> vectorize_tile(const std::vector<double>& patch, std::size_t side);

// Pooled descriptors for a batch of row-major square patches, fanned out
// over a worker pool; output order is the input order regardless of the
// thread count.
std::vector<std::vector<double>> batch_descriptors(
    const std::vector<std::vector<double>>& patches, const ClassPartition& partition,
    bool include_structural_zeros = false, int threads = 0);

// CSV artifact shared by the cluster report and the describe command:
// header "texture,row,col,c0..", one row per patch.
void write_descriptors_csv(std::ostream& out, const std::vector<int>& labels,
                           const std::vector<std::pair<std::size_t, std::size_t>>& positions,
                           const std::vector<std::vector<double>>& descriptors);

// Runs the full sampling -> descriptors -> clustering/classification
// workflow and returns the report. When `report_path` is set, the report
// and its CSV artifacts (named after the report stem) are written as
// files. Rerunning a config reproduces every byte of the report except
// the timings block. Component errors are rethrown with the pipeline
// stage prepended.
nlohmann::json run_experiment(const ExperimentConfig& config);

}  // namespace weyl
