#include <catch2/catch_amalgamated.hpp>

#include "clutterbench/filters.hpp"

#include "support/helpers.hpp"

using namespace clutterbench;

TEST_CASE("blur of a constant plane is exactly constant") {
    const Image img = cbt::constant_image(16, 12, 1, ColorSpace::Scalar, 5.0);
    for (double sigma : {0.5, 1.0, 2.7, 4.0}) {
        const Image out = gaussian_blur(img, sigma);
        for (double v : out.planes[0]) CHECK(v == 5.0);
    }
}

TEST_CASE("unit impulse response matches the sampled kernel weights") {
    Image img(17, 17, 1, ColorSpace::Scalar);
    img.at(0, 8, 8) = 1.0;
    const Image out = gaussian_blur(img, 1.0);

    // independent oracle: exp(-k^2/2), k in [-3,3], normalized; squared for 2-D
    double taps[7], sum = 0.0;
    for (int k = -3; k <= 3; ++k) sum += taps[k + 3] = std::exp(-0.5 * k * k);
    const double center1d = taps[3] / sum;
    CHECK(out.at(0, 8, 8) == Catch::Approx(center1d * center1d).margin(1e-12));
    CHECK(out.at(0, 8, 8) == Catch::Approx(0.1593).margin(1e-3));
    // off-center weight: one step right
    CHECK(out.at(0, 9, 8) == Catch::Approx(center1d * taps[4] / sum).margin(1e-12));
}

TEST_CASE("sigma zero returns the input bit-identically") {
    const Image img = cbt::random_scalar_image(13, 9, 3);
    const Image out = gaussian_blur(img, 0.0);
    CHECK(out.planes[0] == img.planes[0]);
}

TEST_CASE("blur commutes with constant offsets") {
    const Image img = cbt::random_scalar_image(20, 20, 11);
    Image shifted = img;
    for (double& v : shifted.planes[0]) v += 7.25;
    const Image a = gaussian_blur(img, 2.0);
    const Image b = gaussian_blur(shifted, 2.0);
    for (std::size_t i = 0; i < a.planes[0].size(); ++i)
        CHECK(b.planes[0][i] - a.planes[0][i] == Catch::Approx(7.25).margin(1e-9));
}

TEST_CASE("blur matches the dense windowed oracle, borders included") {
    const Image img = cbt::random_scalar_image(15, 11, 5);
    const double sigma = 1.5;
    const Image out = gaussian_blur(img, sigma);
    for (const auto [x, y] : {std::pair{0, 0}, {14, 10}, {7, 5}, {1, 9}, {13, 2}}) {
        CHECK(out.at(0, x, y) ==
              Catch::Approx(cbt::dense_weighted_mean(img, x, y, sigma)).margin(1e-9));
    }
}

TEST_CASE("negative sigma is rejected") {
    CHECK_THROWS_AS(gaussian_blur(cbt::constant_image(8, 8, 1, ColorSpace::Scalar, 0.0), -1.0),
                    invalid_input);
}

TEST_CASE("DoG of a constant is zero everywhere") {
    const Image img = cbt::constant_image(16, 16, 1, ColorSpace::Scalar, 0.7);
    const Image out = dog_contrast(img, 1.0);
    for (double v : out.planes[0]) CHECK(v == 0.0);
}

TEST_CASE("DoG peaks on a step edge") {
    Image img(32, 16, 1, ColorSpace::Scalar);
    for (int y = 0; y < 16; ++y)
        for (int x = 16; x < 32; ++x) img.at(0, x, y) = 1.0;
    const Image out = dog_contrast(img, 1.0);
    // the response peaks within the edge transition zone (the center-surround
    // difference of a step crosses zero exactly on the edge and peaks about
    // 1.2 sigma to either side) and decays away from it
    int argmax = 0;
    double best = -1.0;
    for (int x = 0; x < 32; ++x)
        if (out.at(0, x, 8) > best) best = out.at(0, argmax = x, 8);
    CHECK(argmax >= 13);
    CHECK(argmax <= 18);
    CHECK(out.at(0, 2, 8) < 0.05 * best);
    CHECK(out.at(0, 29, 8) < 0.05 * best);
}

TEST_CASE("DoG impulse response equals the center-weight difference") {
    Image img(33, 33, 1, ColorSpace::Scalar);
    img.at(0, 16, 16) = 3.0;
    const double sigma_c = 1.2;
    const Image out = dog_contrast(img, sigma_c);

    auto center2d = [](double sigma) {
        const int r = static_cast<int>(std::ceil(3.0 * sigma));
        double sum = 0.0, c = 0.0;
        for (int k = -r; k <= r; ++k) {
            const double w = std::exp(-0.5 * k * k / (sigma * sigma));
            sum += w;
            if (k == 0) c = w;
        }
        return (c / sum) * (c / sum);
    };
    const double expected = std::abs(center2d(sigma_c) - center2d(1.6 * sigma_c)) * 3.0;
    CHECK(out.at(0, 16, 16) == Catch::Approx(expected).margin(1e-6));
}

TEST_CASE("oriented energy of a constant is zero in both planes") {
    const Image img = cbt::constant_image(16, 16, 1, ColorSpace::Scalar, 42.0);
    const auto [p1, p2] = oriented_energy(img, 1.0);
    for (double v : p1.planes[0]) CHECK(v == 0.0);
    for (double v : p2.planes[0]) CHECK(v == 0.0);
}

TEST_CASE("vertical and horizontal stripes produce opposite-signed first planes") {
    Image vertical(32, 32, 1, ColorSpace::Scalar);
    Image horizontal(32, 32, 1, ColorSpace::Scalar);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x) {
            vertical.at(0, x, y) = std::cos(2.0 * M_PI * x / 8.0);
            horizontal.at(0, x, y) = std::cos(2.0 * M_PI * y / 8.0);
        }
    const auto [v1, v2] = oriented_energy(vertical, 1.0);
    const auto [h1, h2] = oriented_energy(horizontal, 1.0);
    double v1_sum = 0.0, v2_sum = 0.0, h1_sum = 0.0;
    for (int y = 8; y < 24; ++y)
        for (int x = 8; x < 24; ++x) {
            v1_sum += v1.at(0, x, y);
            v2_sum += std::abs(v2.at(0, x, y));
            h1_sum += h1.at(0, x, y);
        }
    CHECK(v1_sum > 0.0);
    CHECK(h1_sum < 0.0);
    CHECK(std::abs(v1_sum) > 10.0 * v2_sum);
    CHECK(v1_sum == Catch::Approx(-h1_sum).margin(1e-6 * std::abs(v1_sum)));
}

TEST_CASE("45-degree grating drives the second plane, not the first") {
    Image img(33, 33, 1, ColorSpace::Scalar);
    for (int y = 0; y < 33; ++y)
        for (int x = 0; x < 33; ++x)
            img.at(0, x, y) = std::cos(2.0 * M_PI * (x + y) / (8.0 * std::sqrt(2.0)));
    const auto [p1, p2] = oriented_energy(img, 1.0);

    // direct oracle at the center pixel: directional second derivatives of the
    // grating give E0 = E90 and E135 = 0, so plane1 = 0 and plane2 = E45
    double p1_abs = 0.0, p2_sum = 0.0;
    for (int y = 12; y < 21; ++y)
        for (int x = 12; x < 21; ++x) {
            p1_abs += std::abs(p1.at(0, x, y));
            p2_sum += p2.at(0, x, y);
        }
    CHECK(p2_sum > 0.0);
    CHECK(p1_abs < 0.02 * p2_sum);
}
