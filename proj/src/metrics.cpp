#include "ghgif/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ghgif/errors.hpp"

namespace ghgif {

namespace {

std::vector<double> ssim_window()
{
    constexpr int r = SsimSettings::window / 2;
    std::vector<double> k(SsimSettings::window);
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        k[i + r] = std::exp(-0.5 * i * i / (SsimSettings::sigma * SsimSettings::sigma));
        sum += k[i + r];
    }
    for (double& v : k)
        v /= sum;
    return k;
}

// Separable correlation keeping only fully covered positions.
ImageF filter_valid(const ImageF& src, const std::vector<double>& k)
{
    const int n = static_cast<int>(k.size());
    const int w = src.width() - n + 1;
    const int h = src.height() - n + 1;
    ImageF tmp(w, src.height());
    for (int y = 0; y < src.height(); ++y) {
        const auto row = src.row(y);
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += k[j] * row[x + j];
            tmp(x, y) = acc;
        }
    }
    ImageF out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += k[j] * tmp(x, y + j);
            out(x, y) = acc;
        }
    return out;
}

} // namespace

double mse(const ImageF& x, const ImageF& y)
{
    require_same_shape(x, y, "mse");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x.pixels()[i] - y.pixels()[i];
        s += d * d;
    }
    return s / static_cast<double>(x.size());
}

double psnr(const ImageF& x, const ImageF& y, double peak)
{
    const double e = mse(x, y);
    if (e == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / e);
}

double ssim(const ImageF& x, const ImageF& y)
{
    require_same_shape(x, y, "ssim");
    if (x.width() < SsimSettings::window || x.height() < SsimSettings::window)
        throw ParameterError("ssim: image " + std::to_string(x.width()) + "x" + std::to_string(x.height()) +
                             " is smaller than the 11x11 window");
    const auto k = ssim_window();
    const double c1 = std::pow(SsimSettings::k1 * SsimSettings::peak, 2);
    const double c2 = std::pow(SsimSettings::k2 * SsimSettings::peak, 2);

    const ImageF mx = filter_valid(x, k);
    const ImageF my = filter_valid(y, k);
    const ImageF sxx = filter_valid(x * x, k);
    const ImageF syy = filter_valid(y * y, k);
    const ImageF sxy = filter_valid(x * y, k);

    double total = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
        const double ux = mx.pixels()[i];
        const double uy = my.pixels()[i];
        const double vx = sxx.pixels()[i] - ux * ux;
        const double vy = syy.pixels()[i] - uy * uy;
        const double cxy = sxy.pixels()[i] - ux * uy;
        total += ((2.0 * ux * uy + c1) * (2.0 * cxy + c2)) / ((ux * ux + uy * uy + c1) * (vx + vy + c2));
    }
    return total / static_cast<double>(mx.size());
}

MetricReport evaluate(const ImageF& reference, const ImageF& test)
{
    return {psnr(reference, test), ssim(reference, test)};
}

} // namespace ghgif
