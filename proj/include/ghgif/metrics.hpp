#pragma once

#include "ghgif/image.hpp"

namespace ghgif {

/// Reference SSIM settings: 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, dynamic range 1, averaged over fully covered windows only.
struct SsimSettings {
    static constexpr int window = 11;
    static constexpr double sigma = 1.5;
    static constexpr double k1 = 0.01;
    static constexpr double k2 = 0.03;
    static constexpr double peak = 1.0;
};

struct MetricReport {
    double psnr_db; // +inf when the images are identical
    double ssim;
};

double mse(const ImageF& x, const ImageF& y);

/// 10 log10(peak^2 / MSE), or +infinity when MSE == 0.
double psnr(const ImageF& x, const ImageF& y, double peak = 1.0);

/// Mean structural similarity. Both sides must be at least 11 pixels.
double ssim(const ImageF& x, const ImageF& y);

MetricReport evaluate(const ImageF& reference, const ImageF& test);

} // namespace ghgif
