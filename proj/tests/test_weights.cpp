#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ghgif/errors.hpp"
#include "ghgif/weights.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ghgif;

namespace {

double mean_reciprocal(const ImageF& w)
{
    double s = 0.0;
    for (double v : w.pixels())
        s += 1.0 / v;
    return s / w.size();
}

std::vector<double> kernel_of(const KernelField& k, int x, int y)
{
    std::vector<double> out(static_cast<std::size_t>(k.taps_per_pixel()));
    k.kernel_at(x, y, out);
    return out;
}

} // namespace

TEST_CASE("weights: w1 on constant and step images")
{
    const auto flat = eaw_w1(ImageF(9, 9, 0.4));
    CHECK(oracle::max_diff(flat.values, ImageF(9, 9, 1.0)) < 1e-12);

    const auto step = eaw_w1(testing::vertical_step(32, 16, 16, 0.2, 0.8));
    CHECK(step.values(15, 8) < 1.0);
    CHECK(step.values(16, 8) < 1.0);
    CHECK(step.values(3, 8) > 1.0);
    CHECK(step.values(28, 8) > 1.0);
    for (double v : step.values.pixels())
        CHECK(v > 0.0);

    CHECK_THROWS_AS(eaw_w1(flat.values, 0.0), ParameterError);
    CHECK_THROWS_AS(eaw_w2(flat.values, 2, -1.0), ParameterError);
}

TEST_CASE("weights: scalar-loop oracles on random 8x8 images")
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 10; ++t) {
        const ImageF g = oracle::random_image(rng, 8, 8);
        CHECK(oracle::max_diff(local_variance(g, 1), oracle::variance(g, 1)) < 1e-12);
        CHECK(oracle::max_diff(eaw_w1(g).values, oracle::w1(g)) < 1e-9);
        CHECK(oracle::max_diff(chi_field(g, 2), oracle::chi(g, 2)) < 1e-9);
        CHECK(oracle::max_diff(eaw_w2(g, 2).values, oracle::w2(g, 2)) < 1e-9);
        CHECK(oracle::max_diff(gamma_map(g, 2).values, oracle::gamma(g, 2)) < 1e-9);
        CHECK(mnd(g) == oracle::mnd(g));
        CHECK(oracle::max_diff(eaw_w3(g, 3).values, oracle::w3(g, 3)) < 1e-9);
    }
}

TEST_CASE("weights: w1 and w2 average to exactly one")
{
    std::mt19937_64 rng(22);
    const ImageF g = oracle::random_image(rng, 40, 30);
    CHECK(testing::mean_of(eaw_w1(g).values) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(testing::mean_of(eaw_w2(g, 3).values) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_SUITE("disputed")
{
    // Holds only when every window variance is equal: mean(1/w) = mean(v + tau) / H >= 1.
    TEST_CASE("weights: mean of 1/w1 equals one")
    {
        std::mt19937_64 rng(23);
        const ImageF g = oracle::random_image(rng, 40, 30);
        CHECK(std::abs(mean_reciprocal(eaw_w1(g).values) - 1.0) <= 1e-6);
    }

    TEST_CASE("weights: mean of 1/w2 equals one")
    {
        std::mt19937_64 rng(24);
        const ImageF g = oracle::random_image(rng, 40, 30);
        CHECK(std::abs(mean_reciprocal(eaw_w2(g, 3).values) - 1.0) <= 1e-6);
    }
}

TEST_CASE("weights: w2 separates a long edge from fine texture")
{
    ImageF g(64, 64, 0.3);
    for (int y = 0; y < 64; ++y)
        for (int x = 40; x < 64; ++x)
            g(x, y) = 0.9;
    for (int y = 10; y < 26; ++y)
        for (int x = 8; x < 24; ++x)
            g(x, y) = 0.3 + ((x + y) % 2 ? 0.05 : -0.05);
    const auto w2 = eaw_w2(g, 4);
    CHECK(w2.values(40, 50) < w2.values(16, 18));
    CHECK(w2.values(39, 50) < w2.values(16, 18));
    CHECK(eaw_w2(ImageF(8, 8, 0.2), 2).values == ImageF(8, 8, 1.0));
}

TEST_CASE("weights: gamma is a sigmoid of chi centered at its mean")
{
    std::mt19937_64 rng(25);
    const ImageF g = oracle::random_image(rng, 24, 24);
    const ImageF chi = chi_field(g, 2);
    const auto gm = gamma_map(g, 2);
    CHECK_FALSE(gm.degenerate);
    const double mean = testing::mean_of(chi);
    std::vector<std::size_t> order(chi.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return chi.pixels()[a] < chi.pixels()[b]; });
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double c = chi.pixels()[order[k]];
        const double v = gm.values.pixels()[order[k]];
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        CHECK((v > 0.5) == (c > mean));
        if (k > 0)
            CHECK(v >= gm.values.pixels()[order[k - 1]]);
    }

    const auto flat = gamma_map(ImageF(6, 6, 0.1), 1);
    CHECK(flat.degenerate);
    CHECK(flat.values == ImageF(6, 6, 0.5));
}

TEST_CASE("weights: MND of an impulse")
{
    CHECK(mnd(ImageF(5, 5, 0.3)) == ImageF(5, 5, 0.0));
    ImageF g(7, 7, 0.0);
    g(3, 3) = 1.0;
    const ImageF m = mnd(g);
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 7; ++x) {
            const bool near = std::abs(x - 3) <= 1 && std::abs(y - 3) <= 1;
            CHECK(m(x, y) == (near ? 1.0 : 0.0));
        }
    // corner pixels only see in-image neighbors
    g(0, 0) = 0.5;
    CHECK(mnd(g)(0, 0) == 0.5);
}

TEST_CASE("weights: lower median and robust scale")
{
    CHECK(lower_median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(lower_median({4.0, 1.0, 3.0, 2.0}) == 2.0);
    CHECK_THROWS_AS(lower_median({}), ParameterError);
    const ImageF m(4, 1, std::vector<double>{0.0, 1.0, 2.0, 10.0});
    // median 1, deviations {1, 0, 1, 9} -> lower median 1
    CHECK(robust_scale(m) == doctest::Approx(1.4826));
}

TEST_CASE("weights: w3 range, zero set and degenerate convention")
{
    const auto flat = eaw_w3(ImageF(8, 8, 0.6));
    CHECK(flat.degenerate);
    CHECK(flat.values == ImageF(8, 8, 1.0));

    std::mt19937_64 rng(26);
    ImageF g = oracle::random_image(rng, 32, 32, 0.4, 0.45);
    for (int y = 0; y < 32; ++y)
        for (int x = 20; x < 32; ++x)
            g(x, y) += 0.5;
    g(5, 5) = g(4, 5);
    const auto w3 = eaw_w3(g, 3);
    CHECK_FALSE(w3.degenerate);
    const ImageF m = mnd(g);
    const double cut = 3.0 * robust_scale(m);
    int zeros = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double v = w3.values.pixels()[i];
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK((v == 0.0) == (std::abs(m.pixels()[i]) >= cut));
        zeros += v == 0.0;
        if (m.pixels()[i] == 0.0)
            CHECK(v == 1.0);
    }
    CHECK(zeros > 0);
    CHECK_THROWS_AS(eaw_w3(g, 0), ParameterError);
}

TEST_CASE("kernels: mollifier support, normalization and shape")
{
    for (int r : {1, 4, 8}) {
        const KernelField k = mollifier_kernels(r);
        CHECK(k.spatially_invariant());
        const auto taps = kernel_of(k, 0, 0);
        CHECK(std::accumulate(taps.begin(), taps.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        std::size_t i = 0;
        for (int dy = -r; dy <= r; ++dy)
            for (int dx = -r; dx <= r; ++dx, ++i) {
                CHECK(taps[i] >= 0.0);
                CHECK((taps[i] == 0.0) == (dx * dx + dy * dy >= (r + 1) * (r + 1)));
            }
        const auto ref = oracle::bump_window(r);
        for (std::size_t j = 0; j < taps.size(); ++j)
            CHECK(taps[j] == doctest::Approx(ref[j]).epsilon(1e-12));
    }
    const auto k1 = kernel_of(mollifier_kernels(1), 0, 0);
    // center t = 0, edge-adjacent t = 1/2: exp(-1) / exp(-4/3)
    CHECK(k1[4] / k1[1] == doctest::Approx(std::exp(1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("kernels: steering kernels on flat, step and random guidance")
{
    const int r = 3;
    const double h = 1.5;
    const KernelField flat = steering_kernels(ImageF(9, 9, 0.5), r, h);
    const auto k = kernel_of(flat, 4, 4);
    std::vector<double> iso;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            iso.push_back(std::exp(-(dx * dx + dy * dy) / (2.0 * h * h)));
    const double s = std::accumulate(iso.begin(), iso.end(), 0.0);
    for (std::size_t i = 0; i < k.size(); ++i)
        CHECK(k[i] == doctest::Approx(iso[i] / s).epsilon(1e-9));

    const KernelField step = steering_kernels(testing::vertical_step(20, 20, 10, 0.0, 1.0), r, h);
    const auto ks = kernel_of(step, 10, 10);
    double along = 0.0, across = 0.0;
    std::size_t i = 0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx, ++i) {
            if (std::abs(dy) > std::abs(dx))
                along += ks[i];
            else if (std::abs(dx) > std::abs(dy))
                across += ks[i];
        }
    CHECK(along > across);

    std::mt19937_64 rng(27);
    for (auto b : {BorderPolicy::replicate, BorderPolicy::reflect}) {
        const ImageF g = oracle::random_image(rng, 8, 8);
        const KernelField field = steering_kernels(g, 2, 1.0, b);
        const auto ref = oracle::steering(g, 2, 1.0, b);
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x) {
                const auto kk = kernel_of(field, x, y);
                CHECK(std::accumulate(kk.begin(), kk.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
                const auto& rk = ref[static_cast<std::size_t>(y) * 8 + x];
                for (std::size_t j = 0; j < kk.size(); ++j) {
                    CHECK(kk[j] >= 0.0);
                    CHECK(std::abs(kk[j] - rk[j]) < 1e-9);
                }
            }
    }
}

TEST_CASE("kernels: weighted means follow the per-pixel kernels")
{
    std::mt19937_64 rng(28);
    const ImageF g = oracle::random_image(rng, 12, 10);
    const ImageF f = oracle::random_image(rng, 12, 10);
    const oracle::Averaging steer{2, oracle::steering(g, 2, 1.2)};
    CHECK(oracle::max_diff(weighted_mean(f, steering_kernels(g, 2, 1.2)), oracle::average(f, steer)) < 1e-9);
    const oracle::Averaging bump{3, {oracle::bump_window(3)}};
    CHECK(oracle::max_diff(weighted_mean(f, mollifier_kernels(3), BorderPolicy::reflect),
                           oracle::average(f, bump, BorderPolicy::reflect)) < 1e-9);
    CHECK_THROWS_AS(KernelField::invariant(1, std::vector<double>(8, 1.0)), ParameterError);
    CHECK_THROWS_AS(KernelField::invariant(1, std::vector<double>(9, -1.0)), ParameterError);
}
