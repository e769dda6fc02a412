#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "clutterbench/errors.hpp"

namespace clutterbench {

enum class ColorSpace { SRGB, LinearRGB, CIELAB, Scalar };

inline const char* to_string(ColorSpace s) {
    switch (s) {
        case ColorSpace::SRGB: return "srgb";
        case ColorSpace::LinearRGB: return "linear_rgb";
        case ColorSpace::CIELAB: return "cielab";
        case ColorSpace::Scalar: return "scalar";
    }
    return "?";
}

using Plane = std::vector<double>;

// Planar raster. Every plane holds width*height samples in row-major order.
struct Image {
    int width = 0;
    int height = 0;
    ColorSpace space = ColorSpace::Scalar;
    std::vector<Plane> planes;

    Image() = default;
    Image(int w, int h, int n_planes, ColorSpace cs, double fill = 0.0)
        : width(w), height(h), space(cs),
          planes(static_cast<std::size_t>(n_planes),
                 Plane(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill)) {}

    int channels() const { return static_cast<int>(planes.size()); }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    double& at(int plane, int x, int y) {
        return planes[static_cast<std::size_t>(plane)]
                     [static_cast<std::size_t>(y) * width + x];
    }
    double at(int plane, int x, int y) const {
        return planes[static_cast<std::size_t>(plane)]
                     [static_cast<std::size_t>(y) * width + x];
    }

    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height && channels() == o.channels();
    }
};

inline void require_valid(const Image& img, const std::string& who) {
    if (img.width <= 0 || img.height <= 0)
        throw invalid_input(who + ": empty image");
    for (const Plane& p : img.planes)
        if (p.size() != img.pixel_count())
            throw invalid_input(who + ": plane size does not match width*height");
}

inline void require_space(const Image& img, ColorSpace cs, int n_channels,
                          const std::string& who) {
    require_valid(img, who);
    if (img.space != cs)
        throw invalid_input(who + ": expected " + to_string(cs) + " image, got " +
                            to_string(img.space));
    if (img.channels() != n_channels)
        throw invalid_input(who + ": expected " + std::to_string(n_channels) +
                            " channels, got " + std::to_string(img.channels()));
}

// Minimum raster size accepted by the clutter pipeline.
inline constexpr int kMinClutterDim = 8;

inline Image extract_plane(const Image& img, int plane) {
    Image out(img.width, img.height, 1, ColorSpace::Scalar);
    out.planes[0] = img.planes[static_cast<std::size_t>(plane)];
    return out;
}

inline Image mirror_horizontal(const Image& img) {
    Image out(img.width, img.height, img.channels(), img.space);
    for (int c = 0; c < img.channels(); ++c)
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                out.at(c, x, y) = img.at(c, img.width - 1 - x, y);
    return out;
}

inline Image mirror_vertical(const Image& img) {
    Image out(img.width, img.height, img.channels(), img.space);
    for (int c = 0; c < img.channels(); ++c)
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                out.at(c, x, y) = img.at(c, x, img.height - 1 - y);
    return out;
}

}  // namespace clutterbench
