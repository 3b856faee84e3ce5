#include "weyl/image.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "weyl/errors.hpp"
#include "weyl/pooling.hpp"
#include "test_util.hpp"

using weyl::GrayImage;

namespace {

std::string temp_path(const std::string& name) {
    return "test_image_tmp_" + name;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

GrayImage tiny(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t h = rows.size();
    const std::size_t w = rows.begin()->size();
    GrayImage img(w, h);
    std::size_t r = 0;
    for (const auto& row : rows) {
        std::size_t c = 0;
        for (double v : row) img.at(r, c++) = v;
        ++r;
    }
    return img;
}

bool same_pixels(const GrayImage& u, const GrayImage& v) {
    return u.width == v.width && u.height == v.height && u.pixels == v.pixels;
}

}  // namespace

static void test_pgm_load_8bit() {
    const std::string path = temp_path("basic.pgm");
    const unsigned char px[4] = {0, 255, 128, 64};
    write_file(path, std::string("P5\n2 2\n255\n") +
                         std::string(reinterpret_cast<const char*>(px), 4));
    const GrayImage img = weyl::load_pgm(path);
    check_true(img.width == 2 && img.height == 2, "pgm 8bit dimensions");
    check_near(img.at(0, 0), 0.0, 0.0, "pgm black");
    check_near(img.at(0, 1), 1.0, 0.0, "pgm white");
    check_near(img.at(1, 0), 0.50196, 1e-5, "pgm mid");
    check_near(img.at(1, 1), 0.25098, 1e-5, "pgm quarter");
    std::remove(path.c_str());
    std::cout << "test_pgm_load_8bit passed." << std::endl;
}

static void test_pgm_load_16bit() {
    const std::string path = temp_path("deep.pgm");
    // Big-endian sample pairs: 65535, 32768, 0, 256.
    const unsigned char px[8] = {0xFF, 0xFF, 0x80, 0x00, 0x00, 0x00, 0x01, 0x00};
    write_file(path, std::string("P5\n2 2\n65535\n") +
                         std::string(reinterpret_cast<const char*>(px), 8));
    const GrayImage img = weyl::load_pgm(path);
    check_near(img.at(0, 0), 1.0, 0.0, "pgm16 full");
    check_near(img.at(0, 1), 32768.0 / 65535.0, 1e-12, "pgm16 half");
    check_near(img.at(1, 0), 0.0, 0.0, "pgm16 zero");
    check_near(img.at(1, 1), 256.0 / 65535.0, 1e-12, "pgm16 low");
    std::remove(path.c_str());
    std::cout << "test_pgm_load_16bit passed." << std::endl;
}

static void test_pgm_header_comments() {
    const std::string path = temp_path("comments.pgm");
    write_file(path, std::string("P5\n# made by hand\n2\n# split dims\n1\n255\n") +
                         std::string("\x10\x20", 2));
    const GrayImage img = weyl::load_pgm(path);
    check_true(img.width == 2 && img.height == 1, "pgm comment dimensions");
    check_near(img.at(0, 0), 16.0 / 255.0, 1e-12, "pgm comment first sample");
    std::remove(path.c_str());
    std::cout << "test_pgm_header_comments passed." << std::endl;
}

static void test_pgm_errors() {
    const std::string path = temp_path("bad.pgm");

    expect_error<weyl::UsageError>([] { weyl::load_pgm("does_not_exist.pgm"); },
                                   "missing file is a usage error");

    write_file(path, "P2\n2 2\n255\n0 1 2 3\n");
    expect_error<weyl::ParseError>([&] { weyl::load_pgm(path); }, "ascii P2 rejected");

    write_file(path, "BM12345");
    expect_error<weyl::ParseError>([&] { weyl::load_pgm(path); }, "non-PGM rejected");

    write_file(path, std::string("P5\n2 2\n0\n") + std::string(4, '\0'));
    expect_error<weyl::ParseError>([&] { weyl::load_pgm(path); }, "maxval 0 rejected");

    write_file(path, std::string("P5\n2 2\n70000\n") + std::string(8, '\0'));
    expect_error<weyl::ParseError>([&] { weyl::load_pgm(path); }, "maxval > 65535 rejected");

    write_file(path, "P5\n2 -2\n255\n");
    expect_error<weyl::ParseError>([&] { weyl::load_pgm(path); }, "negative height rejected");

    write_file(path, "P5\n0 4\n255\n");
    expect_error<weyl::ParseError>([&] { weyl::load_pgm(path); }, "zero width rejected");

    write_file(path, "P5\n2 2\n255");
    expect_error<weyl::ParseError>([&] { weyl::load_pgm(path); }, "header cut short");

    // Three of four samples present; the error should name a byte offset.
    write_file(path, std::string("P5\n2 2\n255\n") + std::string(3, '\x40'));
    try {
        weyl::load_pgm(path);
        check_true(false, "truncated pixels rejected");
    } catch (const weyl::ParseError& e) {
        check_true(std::string(e.what()).find("byte") != std::string::npos,
                   "truncation error names the byte offset");
    }

    // A 16-bit sample above the declared maxval.
    write_file(path, std::string("P5\n1 1\n300\n") + std::string("\x02\x00", 2));
    expect_error<weyl::ParseError>([&] { weyl::load_pgm(path); },
                                   "sample above maxval rejected");

    std::remove(path.c_str());
    std::cout << "test_pgm_errors passed." << std::endl;
}

static void test_pgm_round_trip() {
    GrayImage img(7, 5);
    for (std::size_t r = 0; r < img.height; ++r)
        for (std::size_t c = 0; c < img.width; ++c)
            img.at(r, c) = static_cast<double>(r * img.width + c) /
                           static_cast<double>(img.pixels.size() - 1);
    const std::string path = temp_path("round.pgm");
    weyl::save_pgm(path, img);
    const GrayImage back = weyl::load_pgm(path);
    check_true(back.width == 7 && back.height == 5, "round trip dimensions");
    // 8-bit quantization loses at most half a level.
    check_true(max_abs_diff(img.pixels, back.pixels) <= 0.5 / 255.0 + 1e-12,
               "round trip within one quantization step");

    // Out-of-range intensities clamp rather than wrap.
    GrayImage wild(2, 1);
    wild.at(0, 0) = -3.0;
    wild.at(0, 1) = 7.0;
    weyl::save_pgm(path, wild);
    const GrayImage clamped = weyl::load_pgm(path);
    check_near(clamped.at(0, 0), 0.0, 0.0, "negative clamps to black");
    check_near(clamped.at(0, 1), 1.0, 0.0, "overshoot clamps to white");

    std::remove(path.c_str());
    std::cout << "test_pgm_round_trip passed." << std::endl;
}

static void test_rotate_and_mirror() {
    const GrayImage img = tiny({{0.1, 0.2}, {0.3, 0.4}});

    const GrayImage rot = weyl::rotate90(img);
    check_true(same_pixels(rot, tiny({{0.3, 0.1}, {0.4, 0.2}})), "clockwise quarter turn");

    const GrayImage mir = weyl::mirror(img);
    check_true(same_pixels(mir, tiny({{0.2, 0.1}, {0.4, 0.3}})), "left-right mirror");

    check_true(same_pixels(weyl::mirror(mir), img), "mirror is an involution");

    GrayImage four = img;
    for (int i = 0; i < 4; ++i) four = weyl::rotate90(four);
    check_true(same_pixels(four, img), "four quarter turns are the identity");

    // Non-square shapes transpose their dimensions.
    const GrayImage wide = tiny({{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}});
    const GrayImage tall = weyl::rotate90(wide);
    check_true(tall.width == 2 && tall.height == 3, "rotated shape");
    check_true(same_pixels(tall, tiny({{0.4, 0.1}, {0.5, 0.2}, {0.6, 0.3}})),
               "rotated rectangle layout");

    std::cout << "test_rotate_and_mirror passed." << std::endl;
}

static void test_dihedral_variants() {
    GrayImage img(4, 4);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        img.pixels[i] = static_cast<double>(i) / 15.0;

    const std::vector<GrayImage> variants = weyl::dihedral_variants(img);
    check_true(variants.size() == 8, "eight dihedral variants");
    check_true(same_pixels(variants[0], img), "variant 0 is the original");
    check_true(same_pixels(variants[1], weyl::rotate90(img)), "variant 1 is a quarter turn");
    check_true(same_pixels(variants[2], weyl::rotate90(weyl::rotate90(img))),
               "variant 2 is a half turn");
    check_true(same_pixels(variants[3],
                           weyl::rotate90(weyl::rotate90(weyl::rotate90(img)))),
               "variant 3 is a three-quarter turn");
    for (int i = 0; i < 4; ++i)
        check_true(same_pixels(variants[4 + i], weyl::mirror(variants[i])),
                   "variant " + std::to_string(4 + i) + " mirrors variant " +
                       std::to_string(i));

    // A generic image has trivial symmetry group, so all eight differ.
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j)
            check_true(!same_pixels(variants[i], variants[j]),
                       "variants " + std::to_string(i) + " and " + std::to_string(j) +
                           " differ");

    expect_error<weyl::UsageError>(
        [] { weyl::dihedral_variants(GrayImage(3, 2)); },
        "dihedral variants reject non-square images");

    std::cout << "test_dihedral_variants passed." << std::endl;
}

// The raster quarter turn and the column-vectorized index permutation used
// by the pooling symmetry checks must describe the same motion.
static void test_rotation_matches_vector_permutation() {
    TestRng rng(404);
    GrayImage img(4, 4);
    for (double& p : img.pixels) p = rng.uniform();

    const auto vectorize = [](const GrayImage& t) {
        std::vector<double> y(16);
        for (std::size_t row = 0; row < 4; ++row)
            for (std::size_t col = 0; col < 4; ++col) y[col * 4 + row] = t.at(row, col);
        return y;
    };

    const std::vector<std::uint32_t> perm = weyl::rotation_permutation(4);
    const std::vector<double> y = vectorize(img);
    std::vector<double> moved(16);
    for (std::size_t v = 0; v < 16; ++v) moved[perm[v]] = y[v];

    check_true(vectorize(weyl::rotate90(img)) == moved,
               "raster rotation equals the index permutation");
    std::cout << "test_rotation_matches_vector_permutation passed." << std::endl;
}

static void test_extract_patch() {
    GrayImage img(6, 4);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        img.pixels[i] = static_cast<double>(i) / 23.0;

    const std::vector<double> patch = weyl::extract_patch(img, 1, 2, 2);
    check_true(patch.size() == 4, "patch size");
    check_near(patch[0], img.at(1, 2), 0.0, "patch (0,0)");
    check_near(patch[1], img.at(1, 3), 0.0, "patch (0,1)");
    check_near(patch[2], img.at(2, 2), 0.0, "patch (1,0)");
    check_near(patch[3], img.at(2, 3), 0.0, "patch (1,1)");

    expect_error<weyl::UsageError>([&] { weyl::extract_patch(img, 3, 0, 2); },
                                   "patch past the bottom edge rejected");
    expect_error<weyl::UsageError>([&] { weyl::extract_patch(img, 0, 5, 2); },
                                   "patch past the right edge rejected");
    std::cout << "test_extract_patch passed." << std::endl;
}

static void test_sample_patches() {
    const GrayImage img = weyl::synth_texture(5, 7, "sine", 64, 0.0, 0);

    const weyl::PatchSet a = weyl::sample_patches(img, 40, 16, 99);
    const weyl::PatchSet b = weyl::sample_patches(img, 40, 16, 99);
    check_true(a.positions == b.positions, "same seed, same positions");
    check_true(a.patches == b.patches, "same seed, same patches");
    check_true(a.patches.size() == 40 && a.positions.size() == 40, "requested count");

    bool moved = false;
    for (const auto& [row, col] : a.positions) {
        check_true(row + 16 <= img.height && col + 16 <= img.width, "position in bounds");
        if (row != a.positions[0].first || col != a.positions[0].second) moved = true;
    }
    check_true(moved, "positions are not all identical");

    const weyl::PatchSet c = weyl::sample_patches(img, 40, 16, 100);
    check_true(a.positions != c.positions, "different seed, different positions");

    for (std::size_t i = 0; i < a.patches.size(); ++i)
        check_true(a.patches[i] == weyl::extract_patch(img, a.positions[i].first,
                                                       a.positions[i].second, 16),
                   "patch matches its recorded position");

    check_true(weyl::sample_patches(img, 0, 16, 1).patches.empty(), "zero patches");
    expect_error<weyl::UsageError>([&] { weyl::sample_patches(img, 1, 65, 1); },
                                   "patch larger than the image rejected");
    expect_error<weyl::UsageError>([&] { weyl::sample_patches(img, 1, 0, 1); },
                                   "zero patch size rejected");
    std::cout << "test_sample_patches passed." << std::endl;
}

static void test_synth_sine() {
    const GrayImage img = weyl::synth_texture(2, 2, "sine", 8, 0.0, 0);
    // Period 2 at half-integer phase alternates between the extremes.
    check_near(img.at(0, 0), 0.95, 1e-12, "sine period2 peak");
    check_near(img.at(0, 1), 0.05, 1e-12, "sine period2 trough");
    check_near(img.at(1, 1), 0.95, 1e-12, "sine period2 diagonal peak");

    const GrayImage p3 = weyl::synth_texture(3, 3, "sine", 9, 0.0, 0);
    const double s = std::sin(3.14159265358979323846 / 3.0);  // phase 0.5 of period 3
    check_near(p3.at(0, 0), 0.5 + 0.45 * s * s, 1e-12, "sine period3 corner");
    check_near(p3.at(1, 1), 0.5, 1e-12, "sine period3 null row");

    // Periodicity in both axes.
    const GrayImage mixed = weyl::synth_texture(4, 6, "sine", 24, 0.0, 0);
    for (std::size_t r = 0; r + 6 < 24; ++r)
        for (std::size_t c = 0; c + 4 < 24; ++c) {
            check_near(mixed.at(r, c), mixed.at(r, c + 4), 1e-12, "x periodicity");
            check_near(mixed.at(r, c), mixed.at(r + 6, c), 1e-12, "y periodicity");
        }
    std::cout << "test_synth_sine passed." << std::endl;
}

static void test_synth_square() {
    const GrayImage img = weyl::synth_texture(2, 2, "square", 6, 0.0, 0);
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c)
            check_near(img.at(r, c), ((r + c) % 2) ? 0.7 : 0.3, 0.0,
                       "period2 weave is a checkerboard");

    // Period 4: the second half of each period flips the level.
    const GrayImage p4 = weyl::synth_texture(4, 4, "square", 8, 0.0, 0);
    check_near(p4.at(0, 0), 0.3, 0.0, "p4 origin");
    check_near(p4.at(0, 2), 0.7, 0.0, "p4 half period in x");
    check_near(p4.at(2, 2), 0.3, 0.0, "p4 both halves cancel");
    check_near(p4.at(0, 4), 0.3, 0.0, "p4 full period repeats");
    std::cout << "test_synth_square passed." << std::endl;
}

static void test_synth_noise() {
    const GrayImage clean = weyl::synth_texture(3, 5, "sine", 32, 0.0, 7);
    const GrayImage noisy1 = weyl::synth_texture(3, 5, "sine", 32, 0.1, 7);
    const GrayImage noisy2 = weyl::synth_texture(3, 5, "sine", 32, 0.1, 7);
    const GrayImage other = weyl::synth_texture(3, 5, "sine", 32, 0.1, 8);

    check_true(noisy1.pixels == noisy2.pixels, "noise is seed-deterministic");
    check_true(noisy1.pixels != clean.pixels, "noise changes the image");
    check_true(noisy1.pixels != other.pixels, "different seeds differ");

    double spread = 0.0;
    for (std::size_t i = 0; i < clean.pixels.size(); ++i)
        spread = std::max(spread, std::abs(noisy1.pixels[i] - clean.pixels[i]));
    check_true(spread > 1e-4, "noise has visible amplitude");

    const GrayImage loud = weyl::synth_texture(3, 5, "sine", 32, 50.0, 7);
    for (double p : loud.pixels)
        check_true(p >= 0.0 && p <= 1.0, "extreme noise stays clipped");
    std::cout << "test_synth_noise passed." << std::endl;
}

static void test_synth_errors() {
    expect_error<weyl::UsageError>(
        [] { weyl::synth_texture(0, 2, "sine", 8, 0.0, 0); }, "period 0 rejected");
    expect_error<weyl::UsageError>(
        [] { weyl::synth_texture(2, 2, "stripes", 8, 0.0, 0); }, "unknown pattern rejected");
    expect_error<weyl::UsageError>(
        [] { weyl::synth_texture(2, 2, "sine", 0, 0.0, 0); }, "size 0 rejected");
    expect_error<weyl::UsageError>(
        [] { weyl::synth_texture(2, 2, "sine", 8, -1.0, 0); }, "negative sigma rejected");
    std::cout << "test_synth_errors passed." << std::endl;
}

int main() {
    test_pgm_load_8bit();
    test_pgm_load_16bit();
    test_pgm_header_comments();
    test_pgm_errors();
    test_pgm_round_trip();
    test_rotate_and_mirror();
    test_dihedral_variants();
    test_rotation_matches_vector_permutation();
    test_extract_patch();
    test_sample_patches();
    test_synth_sine();
    test_synth_square();
    test_synth_noise();
    test_synth_errors();
    return 0;
}
