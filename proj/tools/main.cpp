#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "weyl/csv.hpp"
#include "weyl/errors.hpp"
#include "weyl/image.hpp"
#include "weyl/kernels.hpp"
#include "weyl/pipeline.hpp"
#include "weyl/pooling.hpp"
#include "weyl/spectrum_io.hpp"
#include "weyl/weyl_transform.hpp"

namespace {

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void apply_kernel(const std::string& name) {
    if (!name.empty()) weyl::kernels::set_active_kernel(name);
}

// A signal is either a CSV of numbers (any line layout) or a square PGM
// patch, vectorized columnwise.
std::vector<double> load_signal_samples(const std::string& path) {
    if (has_suffix(path, ".pgm")) {
        const weyl::GrayImage img = weyl::load_pgm(path);
        if (img.width != img.height)
            throw weyl::UsageError("transform: PGM patch must be square, got " +
                                   std::to_string(img.width) + "x" +
                                   std::to_string(img.height));
        return weyl::vectorize_tile(img.pixels, img.width);
    }
    std::vector<double> flat;
    for (const auto& row : weyl::read_csv_numbers_file(path))
        flat.insert(flat.end(), row.begin(), row.end());
    return flat;
}

void run_transform(const std::string& input, int m, bool naive, const std::string& out) {
    const weyl::Signal y(m, load_signal_samples(input));
    weyl::write_spectrum_csv_file(out, naive ? weyl::weyl_naive(y) : weyl::weyl_fast(y));
}

void run_describe(const std::string& image, std::size_t n, std::uint64_t seed,
                  const std::string& out) {
    const weyl::GrayImage img = weyl::load_pgm(image);
    const weyl::PatchSet set = weyl::sample_patches(img, n, 16, seed);
    const auto descriptors = weyl::batch_descriptors(set.patches, weyl::default_partition(4));
    std::ofstream f(out, std::ios::binary);
    if (!f) throw weyl::UsageError("cannot write " + out);
    weyl::write_descriptors_csv(f, std::vector<int>(descriptors.size(), 0), set.positions,
                                descriptors);
    if (!f) throw weyl::UsageError("write failed: " + out);
}

void run_inspect_partition(int m, const std::string& out) {
    const std::string body = weyl::partition_to_json(weyl::default_partition(m));
    std::ofstream f(out, std::ios::binary);
    if (!f) throw weyl::UsageError("cannot write " + out);
    f << body;
    if (!f) throw weyl::UsageError("write failed: " + out);
}

void print_summary(const nlohmann::json& report, const std::string& report_path) {
    std::printf("accuracy %.4f (report %s)\n",
                report["results"]["accuracy"].get<double>(), report_path.c_str());
}

void run_bench(int m, int reps, std::uint64_t seed) {
    if (reps < 1) throw weyl::UsageError("bench: reps must be positive");
    std::mt19937_64 gen(seed);
    std::vector<double> samples(std::size_t{1} << m);
    for (double& v : samples)
        v = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
    const weyl::Signal y(m, std::move(samples));

    // One untimed call each: surfaces the dense-size error before any
    // numbers are printed, and warms the caches.
    weyl::weyl_naive(y);
    weyl::weyl_fast(y);

    double sink = 0.0;
    const auto total_ms = [&](auto&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < reps; ++i) sink += f().coeffs[0];
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         t0)
            .count();
    };
    const double fast_ms = total_ms([&] { return weyl::weyl_fast(y); });
    const double naive_ms = total_ms([&] { return weyl::weyl_naive(y); });
    (void)sink;

    const double r = static_cast<double>(reps);
    std::printf("method,m,reps,total_ms,ms_per_call\n");
    std::printf("fast,%d,%d,%s,%s\n", m, reps, weyl::format_double(fast_ms).c_str(),
                weyl::format_double(fast_ms / r).c_str());
    std::printf("naive,%d,%d,%s,%s\n", m, reps, weyl::format_double(naive_ms).c_str(),
                weyl::format_double(naive_ms / r).c_str());
    std::printf("# naive/fast speedup: %.2f\n", naive_ms / fast_ms);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weyl transform texture toolkit"};
    app.require_subcommand(1);

    std::string kernel;
    app.add_option("--kernel", kernel,
                   "Compute kernel: scalar, avx2, neon or auto (default auto)");

    struct {
        std::string input, out;
        int m = 0;
        bool naive = false;
    } transform;
    auto* transform_cmd = app.add_subcommand("transform", "Weyl spectrum of one signal");
    transform_cmd->add_option("--input", transform.input,
                              "Signal: CSV of 2^m numbers or a square PGM patch")
        ->required();
    transform_cmd->add_option("--m", transform.m, "Bit width of the signal")->required();
    transform_cmd->add_flag("--naive", transform.naive, "Use the dense reference transform");
    transform_cmd->add_option("--out", transform.out, "Spectrum CSV destination")->required();
    transform_cmd->callback([&] {
        apply_kernel(kernel);
        run_transform(transform.input, transform.m, transform.naive, transform.out);
    });

    struct {
        std::string image, out;
        std::size_t n = 0;
        std::uint64_t seed = 0;
    } describe;
    auto* describe_cmd =
        app.add_subcommand("describe", "24-value descriptors of sampled 16x16 patches");
    describe_cmd->add_option("--image", describe.image, "Source PGM")->required();
    describe_cmd->add_option("--n", describe.n, "Number of patches")->required();
    describe_cmd->add_option("--seed", describe.seed, "Sampling seed")->required();
    describe_cmd->add_option("--out", describe.out, "Descriptor CSV destination")->required();
    describe_cmd->callback([&] {
        apply_kernel(kernel);
        run_describe(describe.image, describe.n, describe.seed, describe.out);
    });

    struct {
        int m = 4;
        std::string out;
    } inspect;
    auto* inspect_cmd =
        app.add_subcommand("inspect-partition", "Symmetry classes and retained flags");
    inspect_cmd->add_option("--m", inspect.m, "Bit width (even)")->required();
    inspect_cmd->add_option("--out", inspect.out, "JSON destination")->required();
    inspect_cmd->callback([&] { run_inspect_partition(inspect.m, inspect.out); });

    weyl::ExperimentConfig cluster;
    auto* cluster_cmd =
        app.add_subcommand("cluster", "Sample patches, cluster descriptors, score accuracy");
    cluster_cmd->add_option("--images", cluster.images, "PGM files, one texture each")
        ->required();
    cluster_cmd->add_option("--n", cluster.patches_per_texture, "Patches per texture")
        ->required();
    cluster_cmd->add_option("--k", cluster.clusters, "Cluster count")->required();
    cluster_cmd->add_option("--seed", cluster.seed, "Experiment seed")->required();
    cluster_cmd->add_option("--report", cluster.report_path, "JSON report destination")
        ->required();
    cluster_cmd->add_option("--patch-size", cluster.patch_size,
                            "Patch side, multiple of 4 (default 16)");
    cluster_cmd->add_option("--normalization", cluster.normalization,
                            "none, mean or unitnorm (default none)");
    cluster_cmd->add_flag("--include-structural-zeros", cluster.include_structural_zeros,
                          "Average structurally zero positions into the descriptors");
    cluster_cmd->add_option("--threads", cluster.threads, "Worker threads (0 = hardware)");
    cluster_cmd->callback([&] {
        apply_kernel(kernel);
        cluster.mode = weyl::ExperimentConfig::Mode::kCluster;
        print_summary(weyl::run_experiment(cluster), cluster.report_path);
    });

    weyl::ExperimentConfig classify;
    auto* classify_cmd = app.add_subcommand(
        "classify", "Select discriminative coordinates, nearest-neighbor accuracy");
    classify_cmd->add_option("--images", classify.images, "PGM files, one texture each")
        ->required();
    classify_cmd->add_option("--train-per-class", classify.train_per_class,
                             "Training patches per texture")
        ->required();
    classify_cmd->add_option("--k-coeffs", classify.k_coeffs,
                             "Number of selected coordinates")
        ->required();
    classify_cmd->add_option("--seed", classify.seed, "Experiment seed")->required();
    classify_cmd->add_option("--report", classify.report_path, "JSON report destination")
        ->required();
    classify_cmd->add_option("--n", classify.patches_per_texture,
                             "Patches per texture (default 500)");
    classify_cmd
        ->add_option("--sweep", classify.sweep,
                     "Extra coordinate counts for an accuracy curve CSV")
        ->delimiter(',');
    classify_cmd->add_option("--patch-size", classify.patch_size,
                             "Patch side, power of two (default 16)");
    classify_cmd->add_option("--normalization", classify.normalization,
                             "none, mean or unitnorm (default none)");
    classify_cmd->add_option("--threads", classify.threads, "Worker threads (0 = hardware)");
    classify_cmd->callback([&] {
        apply_kernel(kernel);
        classify.mode = weyl::ExperimentConfig::Mode::kClassify;
        print_summary(weyl::run_experiment(classify), classify.report_path);
    });

    struct {
        int m = 0, reps = 0;
        std::uint64_t seed = 0;
    } bench;
    auto* bench_cmd = app.add_subcommand("bench", "Fast vs naive transform timings (CSV)");
    bench_cmd->add_option("--m", bench.m, "Bit width")->required();
    bench_cmd->add_option("--reps", bench.reps, "Repetitions per method")->required();
    bench_cmd->add_option("--seed", bench.seed, "Signal seed (default 0)");
    bench_cmd->callback([&] {
        apply_kernel(kernel);
        run_bench(bench.m, bench.reps, bench.seed);
    });

    struct {
        int period = 0, period_y = 0;
        std::size_t size = 0;
        double noise = 0.0;
        std::uint64_t seed = 0;
        std::string pattern = "sine", out;
    } synth;
    auto* synth_cmd = app.add_subcommand("synth", "Write a periodic test texture as PGM");
    synth_cmd->add_option("--period", synth.period, "Base period in pixels")->required();
    synth_cmd->add_option("--size", synth.size, "Image side")->required();
    synth_cmd->add_option("--noise", synth.noise, "Gaussian noise sigma")->required();
    synth_cmd->add_option("--seed", synth.seed, "Noise seed")->required();
    synth_cmd->add_option("--out", synth.out, "PGM destination")->required();
    synth_cmd->add_option("--period-y", synth.period_y,
                          "Vertical period (default: same as --period)");
    synth_cmd->add_option("--pattern", synth.pattern, "sine or square (default sine)");
    synth_cmd->callback([&] {
        const int py = synth.period_y > 0 ? synth.period_y : synth.period;
        weyl::save_pgm(synth.out, weyl::synth_texture(synth.period, py, synth.pattern,
                                                      synth.size, synth.noise, synth.seed));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const weyl::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    }
    return 0;
}
