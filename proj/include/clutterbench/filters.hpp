#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "clutterbench/image.hpp"

namespace clutterbench {

// reflect-101 index folding: -1 -> 1, n -> n-2; valid for any offset.
inline int reflect101(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n - 2;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - m;
}

// Symmetric 1-D kernel, taps for offsets -radius .. +radius.
struct Kernel1D {
    std::vector<double> taps;
    int radius = 0;
};

// Sampled Gaussian, truncated at ceil(3*sigma), normalized to unit sum.
inline Kernel1D gaussian_kernel(double sigma) {
    Kernel1D k;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma));
    k.taps.resize(2 * k.radius + 1);
    double sum = 0.0;
    for (int i = -k.radius; i <= k.radius; ++i) {
        const double w = std::exp(-0.5 * (i * i) / (sigma * sigma));
        k.taps[i + k.radius] = w;
        sum += w;
    }
    for (double& w : k.taps) w /= sum;
    return k;
}

// First derivative of a Gaussian, sampled. Antisymmetric, zero DC.
inline Kernel1D gaussian_deriv1_kernel(double sigma) {
    Kernel1D k;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma));
    k.taps.resize(2 * k.radius + 1);
    const double s2 = sigma * sigma;
    for (int i = -k.radius; i <= k.radius; ++i)
        k.taps[i + k.radius] = -i / s2 * std::exp(-0.5 * (i * i) / s2);
    return k;
}

// Second derivative of a Gaussian, sampled and mean-subtracted so the
// discrete DC response is zero.
inline Kernel1D gaussian_deriv2_kernel(double sigma) {
    Kernel1D k;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma));
    k.taps.resize(2 * k.radius + 1);
    const double s2 = sigma * sigma;
    double sum = 0.0;
    for (int i = -k.radius; i <= k.radius; ++i) {
        const double w = (i * i / (s2 * s2) - 1.0 / s2) * std::exp(-0.5 * (i * i) / s2);
        k.taps[i + k.radius] = w;
        sum += w;
    }
    const double mean = sum / static_cast<double>(k.taps.size());
    for (double& w : k.taps) w -= mean;
    return k;
}

namespace detail {

// Convolution is evaluated in a centered form: the pixel's own value is
// subtracted from every tap sample before weighting. For a unit-DC kernel the
// result is v + sum w*(sample - v), which preserves constants exactly; for a
// zero-DC kernel the plain weighted sum of differences is the response.
enum class KernelDC { Unit, Zero };

inline void convolve_rows(const Plane& src, Plane& dst, int w, int h,
                          const Kernel1D& k, KernelDC dc) {
    const int r = k.radius;
    for (int y = 0; y < h; ++y) {
        const double* row = src.data() + static_cast<std::size_t>(y) * w;
        double* out = dst.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            const double center = row[x];
            double acc = 0.0;
            if (x - r >= 0 && x + r < w) {
                for (int i = -r; i <= r; ++i)
                    acc += k.taps[i + r] * (row[x + i] - center);
            } else {
                for (int i = -r; i <= r; ++i)
                    acc += k.taps[i + r] * (row[reflect101(x + i, w)] - center);
            }
            out[x] = dc == KernelDC::Unit ? center + acc : acc;
        }
    }
}

inline void convolve_cols(const Plane& src, Plane& dst, int w, int h,
                          const Kernel1D& k, KernelDC dc) {
    const int r = k.radius;
    for (int y = 0; y < h; ++y) {
        double* out = dst.data() + static_cast<std::size_t>(y) * w;
        const double* center_row = src.data() + static_cast<std::size_t>(y) * w;
        const bool interior = (y - r >= 0 && y + r < h);
        for (int x = 0; x < w; ++x) out[x] = 0.0;
        for (int i = -r; i <= r; ++i) {
            const int yy = interior ? y + i : reflect101(y + i, h);
            const double* row = src.data() + static_cast<std::size_t>(yy) * w;
            const double tap = k.taps[i + r];
            for (int x = 0; x < w; ++x) out[x] += tap * (row[x] - center_row[x]);
        }
        if (dc == KernelDC::Unit)
            for (int x = 0; x < w; ++x) out[x] += center_row[x];
    }
}

inline Plane separable_convolve(const Plane& src, int w, int h,
                                const Kernel1D& kx, KernelDC dcx,
                                const Kernel1D& ky, KernelDC dcy) {
    Plane tmp(src.size()), out(src.size());
    convolve_rows(src, tmp, w, h, kx, dcx);
    convolve_cols(tmp, out, w, h, ky, dcy);
    return out;
}

}  // namespace detail

// Separable Gaussian blur, reflect-101 borders. sigma == 0 returns the input.
inline Image gaussian_blur(const Image& img, double sigma) {
    require_valid(img, "gaussian_blur");
    if (sigma < 0.0) throw invalid_input("gaussian_blur: sigma must be >= 0");
    if (sigma == 0.0) return img;
    const Kernel1D k = gaussian_kernel(sigma);
    Image out = img;
    for (auto& plane : out.planes)
        plane = detail::separable_convolve(plane, img.width, img.height,
                                           k, detail::KernelDC::Unit,
                                           k, detail::KernelDC::Unit);
    return out;
}

inline Plane gaussian_blur_plane(const Plane& p, int w, int h, double sigma) {
    if (sigma == 0.0) return p;
    const Kernel1D k = gaussian_kernel(sigma);
    return detail::separable_convolve(p, w, h, k, detail::KernelDC::Unit,
                                      k, detail::KernelDC::Unit);
}

// Surround/center scale ratio of the difference-of-Gaussians contrast filter.
inline constexpr double kDogSurroundRatio = 1.6;

// |G(sigma_c) - G(1.6 sigma_c)| applied to a luminance plane.
inline Image dog_contrast(const Image& lum, double sigma_c) {
    require_space(lum, ColorSpace::Scalar, 1, "dog_contrast");
    if (sigma_c <= 0.0) throw invalid_input("dog_contrast: sigma_c must be > 0");
    const Plane center = gaussian_blur_plane(lum.planes[0], lum.width, lum.height, sigma_c);
    const Plane surround =
        gaussian_blur_plane(lum.planes[0], lum.width, lum.height, kDogSurroundRatio * sigma_c);
    Image out(lum.width, lum.height, 1, ColorSpace::Scalar);
    for (std::size_t i = 0; i < center.size(); ++i)
        out.planes[0][i] = std::abs(center[i] - surround[i]);
    return out;
}

// Oriented second-derivative energy, encoded as a double-angle 2-vector.
//
// The directional second derivative along angle t is
//   cos^2 t * Ixx + 2 cos t sin t * Ixy + sin^2 t * Iyy,
// evaluated at 0/45/90/135 degrees, rectified, and combined as
// (E0 - E90, E45 - E135) so covariance of the pair is rotation-consistent.
inline std::pair<Image, Image> oriented_energy(const Image& lum, double sigma_o) {
    require_space(lum, ColorSpace::Scalar, 1, "oriented_energy");
    if (sigma_o <= 0.0) throw invalid_input("oriented_energy: sigma_o must be > 0");
    using detail::KernelDC;
    const Kernel1D g = gaussian_kernel(sigma_o);
    const Kernel1D g1 = gaussian_deriv1_kernel(sigma_o);
    const Kernel1D g2 = gaussian_deriv2_kernel(sigma_o);
    const int w = lum.width, h = lum.height;
    const Plane& src = lum.planes[0];
    const Plane ixx = detail::separable_convolve(src, w, h, g2, KernelDC::Zero, g, KernelDC::Unit);
    const Plane iyy = detail::separable_convolve(src, w, h, g, KernelDC::Unit, g2, KernelDC::Zero);
    const Plane ixy = detail::separable_convolve(src, w, h, g1, KernelDC::Zero, g1, KernelDC::Zero);

    Image p1(w, h, 1, ColorSpace::Scalar);
    Image p2(w, h, 1, ColorSpace::Scalar);
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double e0 = std::abs(ixx[i]);
        const double e90 = std::abs(iyy[i]);
        const double e45 = std::abs(0.5 * (ixx[i] + iyy[i]) + ixy[i]);
        const double e135 = std::abs(0.5 * (ixx[i] + iyy[i]) - ixy[i]);
        p1.planes[0][i] = e0 - e90;
        p2.planes[0][i] = e45 - e135;
    }
    return {std::move(p1), std::move(p2)};
}

}  // namespace clutterbench
