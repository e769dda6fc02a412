#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "clutterbench/color.hpp"
#include "clutterbench/covariance.hpp"
#include "clutterbench/image.hpp"
#include "clutterbench/pyramid.hpp"

namespace clutterbench {

enum class ScalePooling { Max, Mean };

inline const char* to_string(ScalePooling p) {
    return p == ScalePooling::Max ? "max" : "mean";
}

// Configuration of the feature-congestion measure. The contrast and
// orientation filters run at unit scale on every pyramid level; scale
// diversity comes from the pyramid itself.
struct ClutterConfig {
    int n_scales = 3;
    double sigma_w = 4.0;        // Gaussian window of the local statistics
    double w_color = 1.0 / 3.0;
    double w_contrast = 1.0 / 3.0;
    double w_orient = 1.0 / 3.0;
    double pooling_order = 1.0;  // Minkowski order of the spatial pool
    ScalePooling scale_pooling = ScalePooling::Max;

    static constexpr double kSigmaContrast = 1.0;
    static constexpr double kSigmaOrient = 1.0;

    std::vector<std::string> validate() const {
        std::vector<std::string> errs;
        if (n_scales < 1) errs.push_back("n_scales must be >= 1");
        if (!(sigma_w > 0.0)) errs.push_back("sigma_w must be > 0");
        if (w_color < 0.0 || w_contrast < 0.0 || w_orient < 0.0)
            errs.push_back("feature weights must be nonnegative");
        if (std::abs(w_color + w_contrast + w_orient - 1.0) > 1e-9)
            errs.push_back("feature weights must sum to 1");
        if (!(pooling_order >= 1.0)) errs.push_back("pooling_order must be >= 1");
        return errs;
    }

    void require_valid() const {
        const auto errs = validate();
        if (!errs.empty()) {
            std::string msg = "ClutterConfig:";
            for (const auto& e : errs) msg += " " + e + ";";
            throw invalid_input(msg);
        }
    }
};

// Per-scale clutter maps for one view, each upsampled to source resolution.
struct FeatureClutterMaps {
    std::vector<Image> color;     // det(Sigma_ab)^(1/4)
    std::vector<Image> contrast;  // sqrt of local variance of the DoG response
    std::vector<Image> orient;    // det(Sigma_orientation)^(1/4)
};

struct ClutterScore {
    double total = 0.0;
    double color = 0.0;
    double contrast = 0.0;
    double orient = 0.0;
    Image clutter_map;
};

struct DvfcScore {
    double value = 0.0;
    ClutterScore robot_view;
    ClutterScore top_view;
};

namespace detail {

inline Image pool_scales(const std::vector<Image>& maps, ScalePooling pooling) {
    Image out = maps.front();
    if (pooling == ScalePooling::Max) {
        for (std::size_t k = 1; k < maps.size(); ++k)
            for (std::size_t i = 0; i < out.planes[0].size(); ++i)
                out.planes[0][i] = std::max(out.planes[0][i], maps[k].planes[0][i]);
    } else {
        for (std::size_t k = 1; k < maps.size(); ++k)
            for (std::size_t i = 0; i < out.planes[0].size(); ++i)
                out.planes[0][i] += maps[k].planes[0][i];
        const double inv = 1.0 / static_cast<double>(maps.size());
        for (double& v : out.planes[0]) v *= inv;
    }
    return out;
}

}  // namespace detail

// Minkowski mean of order p over all pixels of a scalar map.
inline double minkowski_mean(const Image& map, double p) {
    const Plane& v = map.planes[0];
    if (v.empty()) return 0.0;
    if (p == 1.0) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    }
    double s = 0.0;
    for (double x : v) s += std::pow(x, p);
    return std::pow(s / static_cast<double>(v.size()), 1.0 / p);
}

inline FeatureClutterMaps feature_clutter_maps(const Image& img, const ClutterConfig& cfg) {
    cfg.require_valid();
    require_space(img, ColorSpace::SRGB, 3, "feature_clutter_maps");
    if (img.width < kMinClutterDim || img.height < kMinClutterDim)
        throw invalid_input("feature_clutter_maps: image smaller than 8x8");

    const Image lab = srgb_to_cielab(img);
    const Pyramid pyr = build_pyramid(lab, cfg.n_scales);

    FeatureClutterMaps maps;
    for (std::size_t k = 0; k < pyr.levels.size(); ++k) {
        const Image& level = pyr.levels[k];
        const Image L = extract_plane(level, 0);
        const Image a = extract_plane(level, 1);
        const Image b = extract_plane(level, 2);
        const int lw = level.width, lh = level.height;

        Image color_map(lw, lh, 1, ColorSpace::Scalar);
        {
            const CovarianceMap cov = local_covariance({a, b}, cfg.sigma_w);
            for (int y = 0; y < lh; ++y)
                for (int x = 0; x < lw; ++x)
                    color_map.at(0, x, y) = std::pow(covariance_det_clamped(cov, x, y), 0.25);
        }

        Image contrast_map(lw, lh, 1, ColorSpace::Scalar);
        {
            const Image c = dog_contrast(L, ClutterConfig::kSigmaContrast);
            const CovarianceMap cov = local_covariance({c}, cfg.sigma_w);
            for (int y = 0; y < lh; ++y)
                for (int x = 0; x < lw; ++x)
                    contrast_map.at(0, x, y) = std::sqrt(covariance_det_clamped(cov, x, y));
        }

        Image orient_map(lw, lh, 1, ColorSpace::Scalar);
        {
            const auto [o1, o2] = oriented_energy(L, ClutterConfig::kSigmaOrient);
            const CovarianceMap cov = local_covariance({o1, o2}, cfg.sigma_w);
            for (int y = 0; y < lh; ++y)
                for (int x = 0; x < lw; ++x)
                    orient_map.at(0, x, y) = std::pow(covariance_det_clamped(cov, x, y), 0.25);
        }

        const int lvl = static_cast<int>(k);
        maps.color.push_back(upsample_nearest(color_map, lvl, img.width, img.height));
        maps.contrast.push_back(upsample_nearest(contrast_map, lvl, img.width, img.height));
        maps.orient.push_back(upsample_nearest(orient_map, lvl, img.width, img.height));
    }
    return maps;
}

// Scale pooling, weighted pointwise combination and spatial Minkowski pooling.
// Split out from feature_congestion so the pooling algebra is testable on
// synthetic maps.
inline ClutterScore combine_and_pool(const FeatureClutterMaps& maps, const ClutterConfig& cfg) {
    const Image color = detail::pool_scales(maps.color, cfg.scale_pooling);
    const Image contrast = detail::pool_scales(maps.contrast, cfg.scale_pooling);
    const Image orient = detail::pool_scales(maps.orient, cfg.scale_pooling);

    ClutterScore score;
    score.clutter_map = Image(color.width, color.height, 1, ColorSpace::Scalar);
    for (std::size_t i = 0; i < score.clutter_map.planes[0].size(); ++i)
        score.clutter_map.planes[0][i] = cfg.w_color * color.planes[0][i] +
                                         cfg.w_contrast * contrast.planes[0][i] +
                                         cfg.w_orient * orient.planes[0][i];
    score.total = minkowski_mean(score.clutter_map, cfg.pooling_order);
    score.color = minkowski_mean(color, cfg.pooling_order);
    score.contrast = minkowski_mean(contrast, cfg.pooling_order);
    score.orient = minkowski_mean(orient, cfg.pooling_order);
    return score;
}

// Single-view feature congestion.
inline ClutterScore feature_congestion(const Image& img, const ClutterConfig& cfg) {
    return combine_and_pool(feature_clutter_maps(img, cfg), cfg);
}

// Dual-view score: arithmetic mean of the robot-view and top-view totals.
inline DvfcScore dvfc(const Image& robot_img, const Image& top_img, const ClutterConfig& cfg) {
    DvfcScore s;
    s.robot_view = feature_congestion(robot_img, cfg);
    s.top_view = feature_congestion(top_img, cfg);
    s.value = 0.5 * (s.robot_view.total + s.top_view.total);
    return s;
}

}  // namespace clutterbench
