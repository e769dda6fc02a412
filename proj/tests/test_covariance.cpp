#include <catch2/catch_amalgamated.hpp>

#include "clutterbench/covariance.hpp"

#include "support/helpers.hpp"

using namespace clutterbench;

TEST_CASE("constant feature planes give the zero matrix everywhere") {
    const Image a = cbt::constant_image(16, 16, 1, ColorSpace::Scalar, 3.0);
    const Image b = cbt::constant_image(16, 16, 1, ColorSpace::Scalar, -1.5);
    const CovarianceMap cov = local_covariance({a, b}, 2.0);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x)
            for (int i = 0; i < 2; ++i)
                for (int j = i; j < 2; ++j)
                    CHECK(cov.at(i, j, x, y) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("alternating-column plane matches the dense oracle at an interior pixel") {
    Image img(24, 24, 1, ColorSpace::Scalar);
    for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 24; ++x) img.at(0, x, y) = x % 2;
    const CovarianceMap cov = local_covariance({img}, 2.0);
    const double expected = cbt::dense_weighted_covariance(img, img, 12, 12, 2.0);
    CHECK(cov.at(0, 0, 12, 12) == Catch::Approx(expected).epsilon(1e-6));
    CHECK(expected > 0.0);
}

TEST_CASE("two identical planes give a rank-1 matrix with zero determinant") {
    const Image img = cbt::random_scalar_image(20, 20, 9);
    const CovarianceMap cov = local_covariance({img, img}, 2.0);
    for (const auto [x, y] : {std::pair{0, 0}, {10, 10}, {19, 19}, {3, 15}})
        CHECK(covariance_det_clamped(cov, x, y) == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("covariance matches the brute-force oracle at random interior pixels") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        const Image a = cbt::random_scalar_image(32, 28, seed, -1.0, 2.0);
        const Image b = cbt::random_scalar_image(32, 28, seed + 100, 0.0, 5.0);
        const CovarianceMap cov = local_covariance({a, b}, 3.0);
        Rng rng(seed);
        for (int k = 0; k < 10; ++k) {
            const int x = 10 + static_cast<int>(rng.uniform_int(std::uint64_t{12}));
            const int y = 10 + static_cast<int>(rng.uniform_int(std::uint64_t{8}));
            const double ref_aa = cbt::dense_weighted_covariance(a, a, x, y, 3.0);
            const double ref_ab = cbt::dense_weighted_covariance(a, b, x, y, 3.0);
            const double ref_bb = cbt::dense_weighted_covariance(b, b, x, y, 3.0);
            CHECK(cov.at(0, 0, x, y) == Catch::Approx(ref_aa).epsilon(1e-6));
            CHECK(cov.at(0, 1, x, y) == Catch::Approx(ref_ab).epsilon(1e-6).margin(1e-12));
            CHECK(cov.at(1, 1, x, y) == Catch::Approx(ref_bb).epsilon(1e-6));
        }
    }
}

TEST_CASE("covariance is invariant to constant offsets") {
    const Image a = cbt::random_scalar_image(24, 24, 31);
    Image shifted = a;
    for (double& v : shifted.planes[0]) v += 10.0;
    const CovarianceMap cov_a = local_covariance({a}, 2.5);
    const CovarianceMap cov_b = local_covariance({shifted}, 2.5);
    for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 24; ++x)
            CHECK(cov_a.at(0, 0, x, y) == Catch::Approx(cov_b.at(0, 0, x, y)).margin(1e-9));
}

TEST_CASE("per-pixel matrices are PSD within tolerance") {
    const Image a = cbt::random_scalar_image(24, 20, 41, 0.0, 100.0);
    const Image b = cbt::random_scalar_image(24, 20, 42, -50.0, 50.0);
    const Image c = cbt::random_scalar_image(24, 20, 43, -50.0, 50.0);
    const CovarianceMap cov = local_covariance({a, b, c}, 2.0);
    for (int y = 0; y < 20; ++y)
        for (int x = 0; x < 24; ++x) {
            const auto ev = covariance_eigenvalues(cov, x, y);
            for (int i = 0; i < 3; ++i) CHECK(ev[i] >= -1e-9);
        }
}

TEST_CASE("clamped determinant never goes negative") {
    const Image a = cbt::random_scalar_image(16, 16, 51);
    const Image b = cbt::random_scalar_image(16, 16, 52);
    const CovarianceMap cov = local_covariance({a, b}, 1.0);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) CHECK(covariance_det_clamped(cov, x, y) >= 0.0);
}

TEST_CASE("mismatched plane sizes are rejected") {
    const Image a = cbt::random_scalar_image(16, 16, 61);
    const Image b = cbt::random_scalar_image(16, 12, 62);
    CHECK_THROWS_AS(local_covariance({a, b}, 2.0), invalid_input);
    CHECK_THROWS_AS(local_covariance({}, 2.0), invalid_input);
    CHECK_THROWS_AS(local_covariance({a}, 0.0), invalid_input);
}

TEST_CASE("3x3 eigenvalues match a hand-checkable diagonal case") {
    // diagonal planes scaled so the windowed variances differ
    Image a = cbt::random_scalar_image(20, 20, 71, -1.0, 1.0);
    Image b = a, c = a;
    for (double& v : b.planes[0]) v *= 2.0;
    for (double& v : c.planes[0]) v *= 3.0;
    const CovarianceMap cov = local_covariance({a, b, c}, 2.0);
    // perfectly correlated planes: rank 1, so two eigenvalues vanish
    const auto ev = covariance_eigenvalues(cov, 10, 10);
    CHECK(std::abs(ev[0]) < 1e-9);
    CHECK(std::abs(ev[1]) < 1e-9);
    const double var_a = cov.at(0, 0, 10, 10);
    CHECK(ev[2] == Catch::Approx(var_a * (1.0 + 4.0 + 9.0)).epsilon(1e-6));
}
