#include "weyl/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

constexpr std::size_t kMaxSide = 1u << 20;
constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void bad_pgm(const std::string& path, std::istream& in, const std::string& what) {
    in.clear();  // a failed read leaves tellg() unusable
    const auto pos = in.tellg();
    const std::string at =
        pos >= 0 ? " at byte " + std::to_string(static_cast<long long>(pos)) : "";
    throw ParseError(path + ": " + what + at);
}

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(const std::string& path, std::istream& in) {
    std::string token;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!token.empty()) return token;
            continue;
        }
        token.push_back(static_cast<char>(c));
    }
    if (token.empty()) bad_pgm(path, in, "truncated header");
    return token;
}

std::size_t pgm_number(const std::string& path, std::istream& in, const char* field) {
    const std::string token = pgm_token(path, in);
    if (token.empty() || token.size() > 9 ||
        token.find_first_not_of("0123456789") != std::string::npos)
        bad_pgm(path, in, std::string("bad ") + field + " '" + token + "'");
    return static_cast<std::size_t>(std::stoull(token));
}

}  // namespace

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') {
        if (magic[0] == 'P')
            bad_pgm(path, in, std::string("unsupported PGM variant P") + magic[1] +
                                  " (only binary P5 is read)");
        bad_pgm(path, in, "not a PGM file");
    }

    const std::size_t width = pgm_number(path, in, "width");
    const std::size_t height = pgm_number(path, in, "height");
    const std::size_t maxval = pgm_number(path, in, "maxval");
    if (width == 0 || height == 0 || width > kMaxSide || height > kMaxSide)
        bad_pgm(path, in, "bad dimensions " + std::to_string(width) + "x" +
                              std::to_string(height));
    if (maxval == 0 || maxval > 65535)
        bad_pgm(path, in, "bad maxval " + std::to_string(maxval));
    // The single whitespace byte after maxval was already consumed by the
    // token reader.

    GrayImage img(width, height);
    const bool two_byte = maxval > 255;
    const std::size_t count = width * height;
    std::vector<unsigned char> raw(count * (two_byte ? 2 : 1));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        bad_pgm(path, in, "truncated pixel data");

    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t value =
            two_byte ? (std::size_t{raw[2 * i]} << 8) | raw[2 * i + 1] : raw[i];
        if (value > maxval) bad_pgm(path, in, "sample exceeds maxval");
        img.pixels[i] = static_cast<double>(value) * scale;
    }
    return img;
}

void save_pgm(const std::string& path, const GrayImage& img) {
    if (img.width == 0 || img.height == 0) throw UsageError("refusing to write empty image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> raw(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double clamped = std::min(1.0, std::max(0.0, img.pixels[i]));
        raw[i] = static_cast<unsigned char>(std::lround(clamped * 255.0));
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) throw UsageError("write failed: " + path);
}

GrayImage rotate90(const GrayImage& img) {
    GrayImage out(img.height, img.width);
    for (std::size_t r = 0; r < out.height; ++r)
        for (std::size_t c = 0; c < out.width; ++c) out.at(r, c) = img.at(img.height - 1 - c, r);
    return out;
}

GrayImage mirror(const GrayImage& img) {
    GrayImage out(img.width, img.height);
    for (std::size_t r = 0; r < img.height; ++r)
        for (std::size_t c = 0; c < img.width; ++c) out.at(r, c) = img.at(r, img.width - 1 - c);
    return out;
}

std::vector<GrayImage> dihedral_variants(const GrayImage& img) {
    if (img.width != img.height)
        throw UsageError("dihedral variants need a square image, got " +
                         std::to_string(img.width) + "x" + std::to_string(img.height));
    std::vector<GrayImage> out;
    out.reserve(8);
    out.push_back(img);
    for (int i = 0; i < 3; ++i) out.push_back(rotate90(out.back()));
    for (int i = 0; i < 4; ++i) out.push_back(mirror(out[i]));
    return out;
}

std::vector<double> extract_patch(const GrayImage& img, std::size_t row, std::size_t col,
                                  std::size_t size) {
    if (row + size > img.height || col + size > img.width)
        throw UsageError("patch at (" + std::to_string(row) + "," + std::to_string(col) +
                         ") exceeds the image");
    std::vector<double> patch(size * size);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c) patch[r * size + c] = img.at(row + r, col + c);
    return patch;
}

PatchSet sample_patches(const GrayImage& img, std::size_t n, std::size_t size,
                        std::uint64_t seed) {
    if (size == 0) throw UsageError("patch size must be positive");
    if (img.width < size || img.height < size)
        throw UsageError("image " + std::to_string(img.width) + "x" +
                         std::to_string(img.height) + " is smaller than a " +
                         std::to_string(size) + "-pixel patch");

    PatchSet set;
    set.patch_size = size;
    set.seed = seed;
    set.patches.reserve(n);
    set.positions.reserve(n);

    std::mt19937_64 gen(seed);
    const std::uint64_t row_range = img.height - size + 1;
    const std::uint64_t col_range = img.width - size + 1;
    for (std::size_t i = 0; i < n; ++i) {
        // Plain modulo keeps the draw identical across standard libraries;
        // the bias is ~range/2^64.
        const std::size_t row = static_cast<std::size_t>(gen() % row_range);
        const std::size_t col = static_cast<std::size_t>(gen() % col_range);
        set.positions.emplace_back(row, col);
        set.patches.push_back(extract_patch(img, row, col, size));
    }
    return set;
}

namespace {

// Box-Muller on explicit 53-bit uniforms, so noise does not depend on the
// standard library's normal_distribution internals.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : gen_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0,1], keeps the log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return radius * std::cos(2.0 * kPi * u2);
    }

private:
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

GrayImage synth_texture(int period_x, int period_y, const std::string& pattern,
                        std::size_t size, double noise_sigma, std::uint64_t seed) {
    if (period_x < 1 || period_y < 1) throw UsageError("texture periods must be >= 1");
    if (size == 0 || size > kMaxSide) throw UsageError("bad texture size");
    if (pattern != "sine" && pattern != "square")
        throw UsageError("unknown texture pattern '" + pattern + "' (sine, square)");
    if (noise_sigma < 0.0) throw UsageError("noise sigma must be >= 0");

    GrayImage img(size, size);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c) {
            double base;
            if (pattern == "sine") {
                // Half-integer phase: an even period sampled on the grid
                // would otherwise hit only zero crossings.
                const double sx = std::sin(2.0 * kPi * (static_cast<double>(c) + 0.5) /
                                           static_cast<double>(period_x));
                const double sy = std::sin(2.0 * kPi * (static_cast<double>(r) + 0.5) /
                                           static_cast<double>(period_y));
                base = 0.5 + 0.45 * sx * sy;
            } else {
                const bool hx = (c % static_cast<std::size_t>(period_x)) * 2 >=
                                static_cast<std::size_t>(period_x);
                const bool hy = (r % static_cast<std::size_t>(period_y)) * 2 >=
                                static_cast<std::size_t>(period_y);
                base = (hx != hy) ? 0.7 : 0.3;
            }
            img.at(r, c) = base;
        }

    if (noise_sigma > 0.0) {
        GaussianSource noise(seed);
        for (double& p : img.pixels)
            p = std::min(1.0, std::max(0.0, p + noise_sigma * noise.next()));
    }
    return img;
}

}  // namespace weyl
