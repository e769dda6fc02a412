#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "clutterbench/filters.hpp"
#include "clutterbench/image.hpp"

namespace clutterbench {

// Per-pixel symmetric dim x dim matrices (dim 1..3), stored as the upper
// triangle in row-major order: (0,0), (0,1), ..., (1,1), (1,2), ...
struct CovarianceMap {
    int width = 0;
    int height = 0;
    int dim = 0;
    std::vector<Plane> entries;

    static int tri_size(int dim) { return dim * (dim + 1) / 2; }

    int entry_index(int i, int j) const {
        if (i > j) std::swap(i, j);
        // offset of row i in the packed upper triangle
        return i * dim - i * (i - 1) / 2 + (j - i);
    }

    double at(int i, int j, int x, int y) const {
        return entries[static_cast<std::size_t>(entry_index(i, j))]
                      [static_cast<std::size_t>(y) * width + x];
    }
};

namespace detail {

// Eigenvalues of a symmetric matrix, ascending. dim 1..3 only; the 3x3 case
// uses the trigonometric closed form.
inline std::array<double, 3> sym_eigenvalues(const std::array<std::array<double, 3>, 3>& m,
                                             int dim) {
    std::array<double, 3> ev{0.0, 0.0, 0.0};
    if (dim == 1) {
        ev[0] = m[0][0];
    } else if (dim == 2) {
        const double tr = m[0][0] + m[1][1];
        const double det = m[0][0] * m[1][1] - m[0][1] * m[0][1];
        double disc = tr * tr / 4.0 - det;
        if (disc < 0.0) disc = 0.0;
        const double s = std::sqrt(disc);
        ev[0] = tr / 2.0 - s;
        ev[1] = tr / 2.0 + s;
    } else {
        const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
        const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
        const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                          (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
        const double p = std::sqrt(std::max(p2 / 6.0, 0.0));
        if (p == 0.0) {
            ev = {q, q, q};
        } else {
            std::array<std::array<double, 3>, 3> b{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
            const double detb =
                b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
            const double r = std::clamp(detb / 2.0, -1.0, 1.0);
            const double phi = std::acos(r) / 3.0;
            ev[2] = q + 2.0 * p * std::cos(phi);
            ev[0] = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
            ev[1] = 3.0 * q - ev[0] - ev[2];
        }
        std::sort(ev.begin(), ev.end());
    }
    return ev;
}

}  // namespace detail

// Eigenvalues at one pixel, ascending. Valid indices 0..dim-1.
inline std::array<double, 3> covariance_eigenvalues(const CovarianceMap& cov, int x, int y) {
    std::array<std::array<double, 3>, 3> m{};
    for (int i = 0; i < cov.dim; ++i)
        for (int j = i; j < cov.dim; ++j)
            m[i][j] = m[j][i] = cov.at(i, j, x, y);
    return detail::sym_eigenvalues(m, cov.dim);
}

// Determinant with negative eigenvalues clamped to zero.
inline double covariance_det_clamped(const CovarianceMap& cov, int x, int y) {
    const auto ev = covariance_eigenvalues(cov, x, y);
    double det = 1.0;
    for (int i = 0; i < cov.dim; ++i) det *= std::max(ev[i], 0.0);
    return det;
}

// Gaussian-windowed local covariance: Sigma = G*(x x^T) - (G*x)(G*x)^T,
// with G a Gaussian of scale sigma_w and reflect-101 borders.
inline CovarianceMap local_covariance(const std::vector<Image>& features, double sigma_w) {
    if (features.empty() || features.size() > 3)
        throw invalid_input("local_covariance: need 1..3 feature planes");
    if (sigma_w <= 0.0) throw invalid_input("local_covariance: sigma_w must be > 0");
    const Image& first = features.front();
    require_space(first, ColorSpace::Scalar, 1, "local_covariance");
    for (const Image& f : features) {
        require_space(f, ColorSpace::Scalar, 1, "local_covariance");
        if (f.width != first.width || f.height != first.height)
            throw invalid_input("local_covariance: feature plane sizes differ");
    }

    const int dim = static_cast<int>(features.size());
    const int w = first.width, h = first.height;
    const std::size_t n = first.pixel_count();

    std::vector<Plane> means(dim);
    for (int i = 0; i < dim; ++i)
        means[i] = gaussian_blur_plane(features[i].planes[0], w, h, sigma_w);

    CovarianceMap cov;
    cov.width = w;
    cov.height = h;
    cov.dim = dim;
    cov.entries.resize(static_cast<std::size_t>(CovarianceMap::tri_size(dim)));
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            Plane prod(n);
            const Plane& a = features[i].planes[0];
            const Plane& b = features[j].planes[0];
            for (std::size_t p = 0; p < n; ++p) prod[p] = a[p] * b[p];
            Plane second = gaussian_blur_plane(prod, w, h, sigma_w);
            for (std::size_t p = 0; p < n; ++p) second[p] -= means[i][p] * means[j][p];
            cov.entries[static_cast<std::size_t>(cov.entry_index(i, j))] = std::move(second);
        }
    }
    return cov;
}

}  // namespace clutterbench
