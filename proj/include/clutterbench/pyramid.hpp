#pragma once

#include <cmath>
#include <vector>

#include "clutterbench/filters.hpp"
#include "clutterbench/image.hpp"

namespace clutterbench {

// Dyadic Gaussian pyramid. Level k+1 is level k blurred with sigma=1 and
// decimated by keeping even rows/columns, so level-k pixel (u,v) sits exactly
// on source pixel (u<<k, v<<k). Levels that would drop below 8x8 are not built.
struct Pyramid {
    std::vector<Image> levels;
};

inline Image decimate2(const Image& img) {
    const int w = (img.width + 1) / 2;
    const int h = (img.height + 1) / 2;
    Image out(w, h, img.channels(), img.space);
    for (int c = 0; c < img.channels(); ++c)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                out.at(c, x, y) = img.at(c, 2 * x, 2 * y);
    return out;
}

inline Pyramid build_pyramid(const Image& img, int n_levels) {
    require_valid(img, "build_pyramid");
    if (n_levels < 1) throw invalid_input("build_pyramid: n_levels must be >= 1");
    if (img.width < kMinClutterDim || img.height < kMinClutterDim)
        throw invalid_input("build_pyramid: image smaller than 8x8");
    Pyramid pyr;
    pyr.levels.push_back(img);
    for (int k = 1; k < n_levels; ++k) {
        const Image& prev = pyr.levels.back();
        const int nw = (prev.width + 1) / 2;
        const int nh = (prev.height + 1) / 2;
        if (nw < kMinClutterDim || nh < kMinClutterDim) break;
        pyr.levels.push_back(decimate2(gaussian_blur(prev, 1.0)));
    }
    return pyr;
}

// Nearest-neighbour upsampling of a level-k map back to source resolution.
// Level pixel u corresponds to source pixel u*2^k; each source pixel takes the
// level pixel nearest to x/2^k, rounding halves to even so that the mapping
// mirrors symmetrically.
inline Image upsample_nearest(const Image& level_img, int level, int dst_w, int dst_h) {
    const double scale = 1.0 / static_cast<double>(1 << level);
    Image out(dst_w, dst_h, level_img.channels(), level_img.space);
    std::vector<int> xmap(static_cast<std::size_t>(dst_w));
    std::vector<int> ymap(static_cast<std::size_t>(dst_h));
    auto nearest = [scale](int i, int n) {
        int u = static_cast<int>(std::nearbyint(i * scale));  // default FE_TONEAREST: half-to-even
        if (u < 0) u = 0;
        if (u >= n) u = n - 1;
        return u;
    };
    for (int x = 0; x < dst_w; ++x) xmap[x] = nearest(x, level_img.width);
    for (int y = 0; y < dst_h; ++y) ymap[y] = nearest(y, level_img.height);
    for (int c = 0; c < level_img.channels(); ++c)
        for (int y = 0; y < dst_h; ++y)
            for (int x = 0; x < dst_w; ++x)
                out.at(c, x, y) = level_img.at(c, xmap[x], ymap[y]);
    return out;
}

}  // namespace clutterbench
