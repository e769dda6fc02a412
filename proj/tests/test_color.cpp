#include <catch2/catch_amalgamated.hpp>

#include "clutterbench/color.hpp"

#include "support/helpers.hpp"

using namespace clutterbench;

namespace {

// Independent reference: straight-line evaluation of the sRGB -> XYZ(D65) ->
// L*a*b* formulas, written separately from the library path.
void reference_lab(double r, double g, double b, double& L, double& A, double& B) {
    auto lin = [](double c) {
        return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    };
    const double lr = lin(r), lg = lin(g), lb = lin(b);
    const double X = 0.4124564 * lr + 0.3575761 * lg + 0.1804375 * lb;
    const double Y = 0.2126729 * lr + 0.7151522 * lg + 0.0721750 * lb;
    const double Z = 0.0193339 * lr + 0.1192090 * lg + 0.9503041 * lb;
    const double Xn = 0.4124564 + 0.3575761 + 0.1804375;
    const double Yn = 0.2126729 + 0.7151522 + 0.0721750;
    const double Zn = 0.0193339 + 0.1192090 + 0.9503041;
    auto f = [](double t) {
        const double d = 6.0 / 29.0;
        return t > d * d * d ? std::cbrt(t) : t / (3.0 * d * d) + 4.0 / 29.0;
    };
    L = 116.0 * f(Y / Yn) - 16.0;
    A = 500.0 * (f(X / Xn) - f(Y / Yn));
    B = 200.0 * (f(Y / Yn) - f(Z / Zn));
}

}  // namespace

TEST_CASE("white maps to L*=100, a*=b*=0") {
    const Image lab = srgb_to_cielab(cbt::constant_rgb(8, 8, 1.0, 1.0, 1.0));
    CHECK(lab.space == ColorSpace::CIELAB);
    CHECK(lab.at(0, 3, 3) == Catch::Approx(100.0).margin(1e-6));
    CHECK(lab.at(1, 3, 3) == Catch::Approx(0.0).margin(1e-6));
    CHECK(lab.at(2, 3, 3) == Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("black maps to the origin exactly") {
    const Image lab = srgb_to_cielab(cbt::constant_rgb(8, 8, 0.0, 0.0, 0.0));
    CHECK(lab.at(0, 0, 0) == 0.0);
    CHECK(lab.at(1, 0, 0) == 0.0);
    CHECK(lab.at(2, 0, 0) == 0.0);
}

TEST_CASE("pure red matches the standard Lab coordinates") {
    const Image lab = srgb_to_cielab(cbt::constant_rgb(8, 8, 1.0, 0.0, 0.0));
    // frozen from the reference formulas: L=53.2408, a=80.0925, b=67.2035
    CHECK(lab.at(0, 4, 4) == Catch::Approx(53.24).margin(0.05));
    CHECK(lab.at(1, 4, 4) == Catch::Approx(80.09).margin(0.05));
    CHECK(lab.at(2, 4, 4) == Catch::Approx(67.20).margin(0.05));
}

TEST_CASE("conversion agrees with the reference formulas on random pixels") {
    const Image img = cbt::random_srgb_image(16, 16, 42);
    const Image lab = srgb_to_cielab(img);
    for (int i = 0; i < 20; ++i) {
        const int x = (i * 7) % 16, y = (i * 5) % 16;
        double L, A, B;
        reference_lab(img.at(0, x, y), img.at(1, x, y), img.at(2, x, y), L, A, B);
        CHECK(lab.at(0, x, y) == Catch::Approx(L).margin(1e-9));
        CHECK(lab.at(1, x, y) == Catch::Approx(A).margin(1e-9));
        CHECK(lab.at(2, x, y) == Catch::Approx(B).margin(1e-9));
    }
}

TEST_CASE("L* plane stays within [0, 100] for in-gamut inputs") {
    const Image lab = srgb_to_cielab(cbt::random_srgb_image(32, 24, 7));
    for (double v : lab.planes[0]) {
        CHECK(v >= -1e-9);
        CHECK(v <= 100.0 + 1e-9);
    }
}

TEST_CASE("wrong channel count or space tag is rejected") {
    Image gray(8, 8, 1, ColorSpace::Scalar);
    CHECK_THROWS_AS(srgb_to_cielab(gray), invalid_input);
    Image lab(8, 8, 3, ColorSpace::CIELAB);
    CHECK_THROWS_AS(srgb_to_cielab(lab), invalid_input);
}
