#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace weyl {

// Grayscale raster with intensities in [0,1], row-major.
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h, 0.0) {}

    double at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
    double& at(std::size_t row, std::size_t col) { return pixels[row * width + col]; }
};

// Binary PGM (P5) only, maxval up to 65535 (two-byte samples big-endian,
// per the format). Malformed input raises ParseError naming the byte
// offset; unreadable paths raise UsageError.
GrayImage load_pgm(const std::string& path);

// Writes 8-bit P5; intensities are scaled by 255 and rounded.
void save_pgm(const std::string& path, const GrayImage& img);

// Clockwise quarter turn; a h x w image becomes w x h.
GrayImage rotate90(const GrayImage& img);

// Left-right mirror.
GrayImage mirror(const GrayImage& img);

// The eight square-image symmetries in fixed order: rotations by
// 0/90/180/270 degrees, then the mirror of each.
std::vector<GrayImage> dihedral_variants(const GrayImage& img);

// Seeded uniform patch positions (top-left corners), with replacement.
struct PatchSet {
    std::size_t patch_size = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> patches;  // row-major size x size tiles
    std::vector<std::pair<std::size_t, std::size_t>> positions;  // (row, col)
};

PatchSet sample_patches(const GrayImage& img, std::size_t n, std::size_t size,
                        std::uint64_t seed);

// Copies one size x size tile at (row, col).
std::vector<double> extract_patch(const GrayImage& img, std::size_t row, std::size_t col,
                                  std::size_t size);

// Periodic test texture plus seeded Gaussian noise, clipped to [0,1].
// pattern "sine": product of sinusoids with the given x/y periods,
// sampled at half-integer phase so even periods do not degenerate.
// pattern "square": two-level weave with the same periods.
GrayImage synth_texture(int period_x, int period_y, const std::string& pattern,
                        std::size_t size, double noise_sigma, std::uint64_t seed);

}  // namespace weyl
