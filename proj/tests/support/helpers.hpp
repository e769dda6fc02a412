#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "clutterbench/image.hpp"
#include "clutterbench/rng.hpp"

namespace cbt {

using clutterbench::ColorSpace;
using clutterbench::Image;

inline Image constant_image(int w, int h, int channels, ColorSpace cs, double value) {
    return Image(w, h, channels, cs, value);
}

inline Image constant_rgb(int w, int h, double r, double g, double b) {
    Image img(w, h, 3, ColorSpace::SRGB);
    for (auto& v : img.planes[0]) v = r;
    for (auto& v : img.planes[1]) v = g;
    for (auto& v : img.planes[2]) v = b;
    return img;
}

inline Image random_scalar_image(int w, int h, std::uint64_t seed, double lo = 0.0,
                                 double hi = 1.0) {
    Image img(w, h, 1, ColorSpace::Scalar);
    clutterbench::Rng rng(seed);
    for (auto& v : img.planes[0]) v = rng.uniform(lo, hi);
    return img;
}

inline Image random_srgb_image(int w, int h, std::uint64_t seed) {
    Image img(w, h, 3, ColorSpace::SRGB);
    clutterbench::Rng rng(seed);
    for (auto& plane : img.planes)
        for (auto& v : plane) v = rng.uniform();
    return img;
}

// Scratch directory for tests that touch the filesystem.
inline std::string test_dir(const std::string& name) {
    const std::filesystem::path base =
#ifdef CLUTTERBENCH_TEST_TMPDIR
        CLUTTERBENCH_TEST_TMPDIR;
#else
        std::filesystem::temp_directory_path() / "clutterbench_tests";
#endif
    const std::filesystem::path dir = base / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

// Brute-force reference for the Gaussian-windowed statistics: a dense double
// loop over the truncated kernel window with reflect-101 indexing, written
// independently of the separable implementation.
inline double dense_weighted_mean(const Image& plane, int cx, int cy, double sigma) {
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * r + 1));
    double norm = 0.0;
    for (int i = -r; i <= r; ++i) {
        taps[static_cast<std::size_t>(i + r)] = std::exp(-0.5 * i * i / (sigma * sigma));
        norm += taps[static_cast<std::size_t>(i + r)];
    }
    auto fold = [](int i, int n) {
        const int period = 2 * n - 2;
        int m = i % period;
        if (m < 0) m += period;
        return m < n ? m : period - m;
    };
    double acc = 0.0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            const double w = taps[static_cast<std::size_t>(dx + r)] *
                             taps[static_cast<std::size_t>(dy + r)] / (norm * norm);
            acc += w * plane.at(0, fold(cx + dx, plane.width), fold(cy + dy, plane.height));
        }
    return acc;
}

inline double dense_weighted_covariance(const Image& a, const Image& b, int cx, int cy,
                                        double sigma) {
    Image prod(a.width, a.height, 1, ColorSpace::Scalar);
    for (std::size_t i = 0; i < prod.planes[0].size(); ++i)
        prod.planes[0][i] = a.planes[0][i] * b.planes[0][i];
    return dense_weighted_mean(prod, cx, cy, sigma) -
           dense_weighted_mean(a, cx, cy, sigma) * dense_weighted_mean(b, cx, cy, sigma);
}

}  // namespace cbt
