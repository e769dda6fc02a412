#include <catch2/catch_amalgamated.hpp>

#include "clutterbench/pyramid.hpp"

#include "support/helpers.hpp"

using namespace clutterbench;

TEST_CASE("64x64 input with three levels halves twice") {
    const Pyramid pyr = build_pyramid(cbt::random_scalar_image(64, 64, 1), 3);
    REQUIRE(pyr.levels.size() == 3);
    CHECK(pyr.levels[0].width == 64);
    CHECK(pyr.levels[1].width == 32);
    CHECK(pyr.levels[1].height == 32);
    CHECK(pyr.levels[2].width == 16);
}

TEST_CASE("levels below 8x8 are not built") {
    const Pyramid pyr = build_pyramid(cbt::random_scalar_image(16, 16, 2), 3);
    CHECK(pyr.levels.size() == 2);
    CHECK(pyr.levels[1].width == 8);
}

TEST_CASE("odd sizes round up") {
    const Pyramid pyr = build_pyramid(cbt::random_scalar_image(65, 33, 3), 3);
    REQUIRE(pyr.levels.size() == 3);
    CHECK(pyr.levels[1].width == 33);
    CHECK(pyr.levels[1].height == 17);
    CHECK(pyr.levels[2].width == 17);
    CHECK(pyr.levels[2].height == 9);
}

TEST_CASE("constant input stays constant at every level") {
    const Pyramid pyr = build_pyramid(cbt::constant_image(32, 32, 1, ColorSpace::Scalar, 2.5), 3);
    for (const Image& level : pyr.levels)
        for (double v : level.planes[0]) CHECK(v == 2.5);
}

TEST_CASE("n_levels below one and tiny images are rejected") {
    CHECK_THROWS_AS(build_pyramid(cbt::random_scalar_image(16, 16, 4), 0), invalid_input);
    CHECK_THROWS_AS(build_pyramid(cbt::random_scalar_image(7, 16, 5), 2), invalid_input);
}

TEST_CASE("upsample maps level pixels back onto their dyadic positions") {
    Image level(8, 8, 1, ColorSpace::Scalar);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) level.at(0, x, y) = x * 10 + y;
    const Image up = upsample_nearest(level, 1, 16, 16);
    CHECK(up.width == 16);
    // source pixel 2u sits exactly on level pixel u
    for (int u = 0; u < 8; ++u) CHECK(up.at(0, 2 * u, 2 * u) == u * 10 + u);
}
