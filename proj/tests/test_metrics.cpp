#include <doctest.h>

#include <cmath>
#include <random>

#include "ghgif/errors.hpp"
#include "ghgif/metrics.hpp"
#include "oracles.hpp"

using namespace ghgif;

TEST_CASE("psnr: identical images, a uniform offset and the scalar oracle")
{
    std::mt19937_64 rng(51);
    const ImageF x = oracle::random_image(rng, 20, 17);
    CHECK(std::isinf(psnr(x, x)));
    CHECK(psnr(x, x) > 0.0);
    CHECK(psnr(ImageF(9, 9, 0.3), ImageF(9, 9, 0.4)) == doctest::Approx(20.0).epsilon(1e-12));
    for (int t = 0; t < 5; ++t) {
        const ImageF y = oracle::random_image(rng, 20, 17);
        const double ref = 10.0 * std::log10(1.0 / oracle::mse(x, y));
        CHECK(std::abs(psnr(x, y) - ref) < 1e-9);
        CHECK(psnr(x, y) == psnr(y, x));
        CHECK(std::abs(psnr(x, y, 255.0) - (ref + 20.0 * std::log10(255.0))) < 1e-9);
    }
    CHECK_THROWS_AS(psnr(x, ImageF(20, 16)), ParameterError);
}

TEST_CASE("ssim: identical images and constant pairs")
{
    std::mt19937_64 rng(52);
    const ImageF x = oracle::random_image(rng, 24, 24);
    CHECK(std::abs(ssim(x, x) - 1.0) < 1e-12);

    const double c1 = 0.01 * 0.01;
    const double mx = 0.5, my = 0.7;
    const double lum = (2 * mx * my + c1) / (mx * mx + my * my + c1);
    CHECK(ssim(ImageF(16, 16, mx), ImageF(16, 16, my)) == doctest::Approx(lum).epsilon(1e-12));
}

TEST_CASE("ssim: matches the direct per-window oracle")
{
    std::mt19937_64 rng(53);
    for (int t = 0; t < 4; ++t) {
        const ImageF x = oracle::random_image(rng, 32, 32);
        ImageF y = x;
        std::normal_distribution<double> n(0.0, 0.05 + 0.1 * t);
        for (double& v : y.pixels())
            v += n(rng);
        const double s = ssim(x, y);
        CHECK(std::abs(s - oracle::ssim(x, y)) < 1e-6);
        CHECK(std::abs(s - ssim(y, x)) < 1e-9);
        CHECK(s <= 1.0 + 1e-12);
        CHECK(s < 1.0);
    }
    // non-square, exactly one window wide
    const ImageF a = oracle::random_image(rng, 11, 19);
    const ImageF b = oracle::random_image(rng, 11, 19);
    CHECK(std::abs(ssim(a, b) - oracle::ssim(a, b)) < 1e-6);
}

TEST_CASE("ssim: input validation")
{
    CHECK_THROWS_AS(ssim(ImageF(10, 20), ImageF(10, 20)), ParameterError);
    CHECK_THROWS_AS(ssim(ImageF(20, 20), ImageF(20, 21)), ParameterError);
}

TEST_CASE("metrics: evaluate bundles both scores")
{
    std::mt19937_64 rng(54);
    const ImageF x = oracle::random_image(rng, 16, 16);
    const ImageF y = oracle::random_image(rng, 16, 16);
    const auto m = evaluate(x, y);
    CHECK(m.psnr_db == psnr(x, y));
    CHECK(m.ssim == ssim(x, y));
    CHECK(mse(x, y) == doctest::Approx(oracle::mse(x, y)).epsilon(1e-12));
}
