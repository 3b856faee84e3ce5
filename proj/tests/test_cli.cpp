// Exercises the installed command surface by spawning the real binary.
// The path comes from the build system; WEYL_CLI overrides it.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"
#include "weyl/spectrum_io.hpp"
#include "test_util.hpp"

#ifndef WEYL_CLI_PATH
#define WEYL_CLI_PATH "weyl"
#endif

namespace {

std::string cli_path() {
    const char* env = std::getenv("WEYL_CLI");
    return env != nullptr ? env : WEYL_CLI_PATH;
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_file = "test_cli_stdout.txt";
    const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    std::remove(out_file.c_str());
    return r;
}

void check_code(const RunResult& r, int want, const std::string& what) {
    if (r.code != want) {
        std::cerr << "FAIL " << what << ": exit code " << r.code << " want " << want
                  << "\noutput:\n" << r.out << std::endl;
        std::abort();
    }
}

}  // namespace

static void test_usage_surface() {
    check_code(run_cli(""), 2, "bare invocation needs a subcommand");
    check_code(run_cli("--help"), 0, "help exits cleanly");
    check_code(run_cli("transform --help"), 0, "subcommand help exits cleanly");
    check_code(run_cli("no-such-command"), 2, "unknown subcommand");
    check_code(run_cli("transform --m 2"), 2, "missing required options");
    check_code(run_cli("bench --m 2 --reps 1 --bogus"), 2, "unknown flag");
    std::cout << "test_usage_surface passed." << std::endl;
}

static void test_transform_roundtrip() {
    {
        std::ofstream f("test_cli_sig.csv");
        f << "1,2,3,4\n";
    }
    check_code(run_cli("transform --input test_cli_sig.csv --m 2 --out test_cli_fast.csv"),
               0, "fast transform");
    check_code(run_cli("transform --input test_cli_sig.csv --m 2 --naive "
                       "--out test_cli_naive.csv"),
               0, "naive transform");

    const weyl::WeylSpectrum fast = weyl::read_spectrum_csv_file("test_cli_fast.csv");
    const weyl::WeylSpectrum naive = weyl::read_spectrum_csv_file("test_cli_naive.csv");
    check_true(fast.m == 2, "spectrum header m");
    check_near(fast.at(0, 0), 15.0, 1e-12, "energy coefficient");
    check_near(fast.at(0, 2), -10.0, 1e-12, "known coefficient");
    check_near(max_abs_diff(fast.coeffs, naive.coeffs), 0.0, 1e-12,
               "fast and naive agree through the CLI");

    check_code(run_cli("transform --input test_cli_sig.csv --m 3 --out test_cli_x.csv"), 2,
               "length mismatch is a usage error");
    check_code(run_cli("transform --input test_cli_missing.csv --m 2 --out test_cli_x.csv"),
               2, "missing input is a usage error");
    {
        std::ofstream f("test_cli_bad.csv");
        f << "one,two\n";
    }
    check_code(run_cli("transform --input test_cli_bad.csv --m 1 --out test_cli_x.csv"), 3,
               "malformed numbers are a parse error");

    for (const char* p : {"test_cli_sig.csv", "test_cli_fast.csv", "test_cli_naive.csv",
                          "test_cli_bad.csv", "test_cli_x.csv"})
        std::remove(p);
    std::cout << "test_transform_roundtrip passed." << std::endl;
}

static void test_synth_describe_partition() {
    check_code(run_cli("synth --period 3 --size 64 --noise 0.05 --seed 4 "
                       "--out test_cli_tex.pgm"),
               0, "synth writes a texture");
    check_code(run_cli("synth --period 0 --size 8 --noise 0 --seed 1 --out test_cli_z.pgm"),
               2, "degenerate period rejected");

    check_code(run_cli("describe --image test_cli_tex.pgm --n 7 --seed 1 "
                       "--out test_cli_desc.csv"),
               0, "describe runs");
    {
        std::ifstream f("test_cli_desc.csv");
        std::string header;
        std::getline(f, header);
        check_true(header.rfind("texture,row,col,c0,", 0) == 0, "descriptor header");
        std::size_t rows = 0;
        for (std::string line; std::getline(f, line);)
            if (!line.empty()) ++rows;
        check_true(rows == 7, "one descriptor row per patch");
    }

    check_code(run_cli("inspect-partition --m 4 --out test_cli_part.json"), 0,
               "partition export");
    {
        std::ifstream f("test_cli_part.json");
        const nlohmann::json part = nlohmann::json::parse(f);
        check_true(part["m"] == 4, "partition m");
        check_true(part["retained_count"] == 24, "24 retained classes");
        check_true(part["classes"].size() == 36, "36 product classes");
    }
    check_code(run_cli("inspect-partition --m 3 --out test_cli_p3.json"), 2,
               "odd bit width rejected");

    for (const char* p : {"test_cli_tex.pgm", "test_cli_desc.csv", "test_cli_part.json"})
        std::remove(p);
    std::cout << "test_synth_describe_partition passed." << std::endl;
}

static void test_experiments_and_bench() {
    check_code(run_cli("synth --period 2 --size 64 --noise 0.05 --seed 8 --pattern square "
                       "--out test_cli_a.pgm"),
               0, "first texture");
    check_code(run_cli("synth --period 3 --size 64 --noise 0.05 --seed 9 --pattern square "
                       "--out test_cli_b.pgm"),
               0, "second texture");

    const RunResult cl = run_cli(
        "cluster --images test_cli_a.pgm test_cli_b.pgm --n 20 --k 2 --seed 1 "
        "--report test_cli_cl.json");
    check_code(cl, 0, "cluster experiment");
    check_true(cl.out.rfind("accuracy ", 0) == 0, "cluster prints a summary");
    {
        std::ifstream f("test_cli_cl.json");
        const nlohmann::json report = nlohmann::json::parse(f);
        check_true(report["schema"] == 1, "cluster report schema");
        check_true(report["results"]["descriptor_length"] == 24, "descriptor length");
    }

    const RunResult cf = run_cli(
        "classify --images test_cli_a.pgm test_cli_b.pgm --train-per-class 5 --k-coeffs 1 "
        "--n 20 --seed 1 --sweep 1,2 --report test_cli_cf.json");
    check_code(cf, 0, "classify experiment");
    {
        std::ifstream f("test_cli_cf.json");
        const nlohmann::json report = nlohmann::json::parse(f);
        check_true(report["results"]["sweep"].size() == 2, "sweep rows in report");
        std::ifstream sweep("test_cli_cf_sweep.csv");
        check_true(static_cast<bool>(sweep), "sweep CSV artifact exists");
        std::ifstream ranking("test_cli_cf_ranking.csv");
        check_true(static_cast<bool>(ranking), "ranking CSV artifact exists");
    }

    const RunResult bench = run_cli("--kernel scalar bench --m 4 --reps 3");
    check_code(bench, 0, "bench with forced scalar kernel");
    check_true(bench.out.rfind("method,m,reps,total_ms,ms_per_call\n", 0) == 0,
               "bench header");
    check_true(bench.out.find("\nfast,4,3,") != std::string::npos, "bench fast row");
    check_true(bench.out.find("\nnaive,4,3,") != std::string::npos, "bench naive row");
    check_code(run_cli("--kernel imaginary bench --m 2 --reps 1"), 2,
               "unknown kernel rejected");

    for (const char* p :
         {"test_cli_a.pgm", "test_cli_b.pgm", "test_cli_cl.json", "test_cli_cl_pca.csv",
          "test_cli_cl_descriptors.csv", "test_cli_cf.json", "test_cli_cf_ranking.csv",
          "test_cli_cf_sweep.csv"})
        std::remove(p);
    std::cout << "test_experiments_and_bench passed." << std::endl;
}

int main() {
    test_usage_surface();
    test_transform_roundtrip();
    test_synth_describe_partition();
    test_experiments_and_bench();
    return 0;
}
