#pragma once

#include <cmath>

#include "clutterbench/image.hpp"

namespace clutterbench {

inline double srgb_channel_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

inline double linear_channel_to_srgb(double c) {
    return c <= 0.0031308 ? c * 12.92 : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

namespace detail {

// sRGB -> XYZ, D65. The white point is taken as the matrix row sums so that
// (1,1,1) lands exactly on L*=100, a*=b*=0.
inline constexpr double kSrgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1192090, 0.9503041},
};
inline constexpr double kWhiteX = 0.4124564 + 0.3575761 + 0.1804375;
inline constexpr double kWhiteY = 0.2126729 + 0.7151522 + 0.0721750;
inline constexpr double kWhiteZ = 0.0193339 + 0.1192090 + 0.9503041;

inline double lab_f(double t) {
    constexpr double d = 6.0 / 29.0;
    constexpr double d3 = d * d * d;
    return t > d3 ? std::cbrt(t) : t / (3.0 * d * d) + 4.0 / 29.0;
}

}  // namespace detail

inline void srgb_pixel_to_cielab(double r, double g, double b,
                                 double& L, double& a, double& bb) {
    using namespace detail;
    const double lr = srgb_channel_to_linear(r);
    const double lg = srgb_channel_to_linear(g);
    const double lb = srgb_channel_to_linear(b);
    const double X = kSrgbToXyz[0][0] * lr + kSrgbToXyz[0][1] * lg + kSrgbToXyz[0][2] * lb;
    const double Y = kSrgbToXyz[1][0] * lr + kSrgbToXyz[1][1] * lg + kSrgbToXyz[1][2] * lb;
    const double Z = kSrgbToXyz[2][0] * lr + kSrgbToXyz[2][1] * lg + kSrgbToXyz[2][2] * lb;
    const double fx = lab_f(X / kWhiteX);
    const double fy = lab_f(Y / kWhiteY);
    const double fz = lab_f(Z / kWhiteZ);
    L = 116.0 * fy - 16.0;
    a = 500.0 * (fx - fy);
    bb = 200.0 * (fy - fz);
}

inline Image srgb_to_cielab(const Image& img) {
    require_space(img, ColorSpace::SRGB, 3, "srgb_to_cielab");
    Image out(img.width, img.height, 3, ColorSpace::CIELAB);
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        double L, a, b;
        srgb_pixel_to_cielab(img.planes[0][i], img.planes[1][i], img.planes[2][i], L, a, b);
        out.planes[0][i] = L;
        out.planes[1][i] = a;
        out.planes[2][i] = b;
    }
    return out;
}

}  // namespace clutterbench
