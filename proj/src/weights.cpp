#include "ghgif/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "filters_impl.hpp"
#include "ghgif/errors.hpp"

namespace ghgif {

namespace {

void require_tau(double tau)
{
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw ParameterError("tau must be > 0, got " + std::to_string(tau));
}

void require_radius(int r, const char* what)
{
    if (r < 1)
        throw ParameterError(std::string(what) + ": radius must be >= 1, got " + std::to_string(r));
}

// H / (v + tau) with H the harmonic mean of (v + tau).
ImageF harmonic_normalized(const ImageF& v, double tau)
{
    double inv_sum = 0.0;
    for (double x : v.pixels())
        inv_sum += 1.0 / (x + tau);
    const double hmean = static_cast<double>(v.size()) / inv_sum;
    ImageF w(v.width(), v.height());
    for (std::size_t i = 0; i < v.size(); ++i)
        w.pixels()[i] = hmean / (v.pixels()[i] + tau);
    return w;
}

struct PaddedImage {
    int stride;
    std::vector<double> data;
};

PaddedImage pad_image(const ImageF& src, int r, BorderPolicy border)
{
    const int w = src.width();
    const int h = src.height();
    PaddedImage p{w + 2 * r, std::vector<double>(static_cast<std::size_t>(w + 2 * r) * (h + 2 * r))};
    for (int y = -r; y < h + r; ++y) {
        const auto row = src.row(map_index(y, h, border));
        double* dst = p.data.data() + static_cast<std::size_t>(y + r) * p.stride;
        for (int x = -r; x < w + r; ++x)
            dst[x + r] = row[map_index(x, w, border)];
    }
    return p;
}

} // namespace

// ---- KernelField ---------------------------------------------------------

KernelField KernelField::invariant(int radius, std::vector<double> taps)
{
    require_radius(radius, "KernelField");
    const auto n = static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1));
    if (taps.size() != n)
        throw ParameterError("KernelField: expected " + std::to_string(n) + " taps, got " + std::to_string(taps.size()));
    const double sum = std::accumulate(taps.begin(), taps.end(), 0.0);
    if (!(sum > 0.0) || std::any_of(taps.begin(), taps.end(), [](double t) { return t < 0.0 || !std::isfinite(t); }))
        throw ParameterError("KernelField: taps must be finite, nonnegative and not all zero");
    for (double& t : taps)
        t /= sum;
    KernelField k;
    k.radius_ = radius;
    k.taps_ = std::move(taps);
    return k;
}

KernelField KernelField::steering(int width, int height, int radius, double h,
                                  std::vector<std::array<double, 3>> metric)
{
    require_radius(radius, "KernelField");
    if (!(h > 0.0))
        throw ParameterError("steering kernel h must be > 0, got " + std::to_string(h));
    if (metric.size() != static_cast<std::size_t>(width) * height)
        throw ParameterError("KernelField: metric size does not match image");
    KernelField k;
    k.radius_ = radius;
    k.width_ = width;
    k.height_ = height;
    k.h_ = h;
    k.metric_ = std::move(metric);
    return k;
}

void KernelField::kernel_at(int x, int y, std::span<double> out) const
{
    if (spatially_invariant()) {
        std::copy(taps_.begin(), taps_.end(), out.begin());
        return;
    }
    const auto& m = metric_[static_cast<std::size_t>(y) * width_ + x];
    const double det = m[0] * m[2] - m[1] * m[1];
    const double scale = std::sqrt(std::max(det, 0.0));
    const double inv = 1.0 / (2.0 * h_ * h_);
    double sum = 0.0;
    std::size_t i = 0;
    for (int dy = -radius_; dy <= radius_; ++dy)
        for (int dx = -radius_; dx <= radius_; ++dx, ++i) {
            const double q = m[0] * dx * dx + 2.0 * m[1] * dx * dy + m[2] * dy * dy;
            out[i] = std::exp(-q * inv) * scale;
            sum += out[i];
        }
    for (std::size_t j = 0; j < i; ++j)
        out[j] /= sum;
}

// ---- weight fields -------------------------------------------------------

ImageF local_variance(const ImageF& g, int r, BorderPolicy border)
{
    require_radius(r, "local_variance");
    const ImageF mean = detail::box_mean(g, r, border);
    ImageF var = detail::box_mean(g * g, r, border);
    for (std::size_t i = 0; i < var.size(); ++i) {
        const double m = mean.pixels()[i];
        var.pixels()[i] = std::max(0.0, var.pixels()[i] - m * m);
    }
    return var;
}

WeightMap eaw_w1(const ImageF& g, double tau, BorderPolicy border)
{
    require_tau(tau);
    require_finite(g, "eaw_w1 guidance");
    return {harmonic_normalized(local_variance(g, 1, border), tau), false};
}

ImageF chi_field(const ImageF& g, int r, BorderPolicy border)
{
    require_finite(g, "chi guidance");
    const ImageF v1 = local_variance(g, 1, border);
    ImageF chi = local_variance(g, r, border);
    for (std::size_t i = 0; i < chi.size(); ++i)
        chi.pixels()[i] = std::sqrt(v1.pixels()[i]) * std::sqrt(chi.pixels()[i]);
    return chi;
}

WeightMap eaw_w2(const ImageF& g, int r, double tau, BorderPolicy border)
{
    require_tau(tau);
    return {harmonic_normalized(chi_field(g, r, border), tau), false};
}

WeightMap gamma_map(const ImageF& g, int r, BorderPolicy border)
{
    const ImageF chi = chi_field(g, r, border);
    const double mean = mean_value(chi);
    const double lo = min_value(chi);
    if (!(mean > lo))
        return {ImageF(g.width(), g.height(), 0.5), true};
    const double eta = 4.0 / (mean - lo);
    ImageF out(g.width(), g.height());
    for (std::size_t i = 0; i < chi.size(); ++i)
        out.pixels()[i] = 1.0 / (1.0 + std::exp(-eta * (chi.pixels()[i] - mean)));
    return {std::move(out), false};
}

ImageF mnd(const ImageF& g)
{
    require_finite(g, "mnd input");
    const int w = g.width();
    const int h = g.height();
    ImageF out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double c = g(x, y);
            double m = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int qx = x + dx;
                    const int qy = y + dy;
                    if (qx < 0 || qy < 0 || qx >= w || qy >= h)
                        continue;
                    m = std::max(m, std::abs(g(qx, qy) - c));
                }
            out(x, y) = m;
        }
    return out;
}

double lower_median(std::vector<double> values)
{
    if (values.empty())
        throw ParameterError("median of empty set");
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

double robust_scale(const ImageF& mnd_field)
{
    const auto px = mnd_field.pixels();
    const double med = lower_median({px.begin(), px.end()});
    std::vector<double> dev(px.size());
    for (std::size_t i = 0; i < px.size(); ++i)
        dev[i] = std::abs(px[i] - med);
    return 1.4826 * lower_median(std::move(dev));
}

WeightMap eaw_w3(const ImageF& g, int c)
{
    if (c < 1)
        throw ParameterError("w3 scale c must be a positive integer, got " + std::to_string(c));
    const ImageF m = mnd(g);
    const double s = robust_scale(m);
    if (!(s > 0.0))
        return {ImageF(g.width(), g.height(), 1.0), true};
    const double cut = c * s;
    ImageF out(g.width(), g.height());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double v = std::abs(m.pixels()[i]);
        if (v < cut) {
            const double u = v / cut;
            out.pixels()[i] = (1.0 - u * u) * (1.0 - u * u);
        } else {
            out.pixels()[i] = 0.0;
        }
    }
    return {std::move(out), false};
}

// ---- kernels -------------------------------------------------------------

KernelField mollifier_kernels(int r)
{
    require_radius(r, "mollifier_kernels");
    std::vector<double> taps;
    taps.reserve(static_cast<std::size_t>((2 * r + 1) * (2 * r + 1)));
    const double scale = 1.0 / (r + 1.0);
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            const double t2 = (dx * dx + dy * dy) * scale * scale;
            taps.push_back(t2 < 1.0 ? std::exp(-1.0 / (1.0 - t2)) : 0.0);
        }
    return KernelField::invariant(r, std::move(taps));
}

KernelField steering_kernels(const ImageF& g, int r, double h, BorderPolicy border)
{
    require_radius(r, "steering_kernels");
    require_finite(g, "steering guidance");
    const int w = g.width();
    const int ht = g.height();
    ImageF gxx(w, ht), gxy(w, ht), gyy(w, ht);
    auto at = [&](int x, int y) { return g(map_index(x, w, border), map_index(y, ht, border)); };
    for (int y = 0; y < ht; ++y)
        for (int x = 0; x < w; ++x) {
            // Sobel scaled by 1/8 so a unit ramp gives derivative 1.
            const double gx = ((at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1)) -
                               (at(x - 1, y - 1) + 2.0 * at(x - 1, y) + at(x - 1, y + 1))) / 8.0;
            const double gy = ((at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1)) -
                               (at(x - 1, y - 1) + 2.0 * at(x, y - 1) + at(x + 1, y - 1))) / 8.0;
            gxx(x, y) = gx * gx;
            gxy(x, y) = gx * gy;
            gyy(x, y) = gy * gy;
        }
    const ImageF cxx = detail::box_mean(gxx, r, border);
    const ImageF cxy = detail::box_mean(gxy, r, border);
    const ImageF cyy = detail::box_mean(gyy, r, border);

    std::vector<std::array<double, 3>> metric(g.size());
    for (std::size_t i = 0; i < metric.size(); ++i) {
        const double a = cxx.pixels()[i] + steering_delta;
        const double b = cxy.pixels()[i];
        const double d = cyy.pixels()[i] + steering_delta;
        const double root_det = std::sqrt(a * d - b * b);
        metric[i] = {a / root_det, b / root_det, d / root_det};
    }
    return KernelField::steering(w, ht, r, h, std::move(metric));
}

std::vector<ImageF> weighted_means(std::span<const ImageF* const> srcs, const KernelField& kernels,
                                   BorderPolicy border)
{
    std::vector<ImageF> outs;
    if (srcs.empty())
        return outs;
    const ImageF& first = *srcs.front();
    const int w = first.width();
    const int h = first.height();
    const int r = kernels.radius();
    std::vector<PaddedImage> padded;
    for (const ImageF* s : srcs) {
        require_same_shape(first, *s, "weighted_means");
        padded.push_back(pad_image(*s, r, border));
        outs.emplace_back(w, h);
    }

    const int side = 2 * r + 1;
    std::vector<double> k(static_cast<std::size_t>(kernels.taps_per_pixel()));
    if (kernels.spatially_invariant())
        kernels.kernel_at(0, 0, k);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!kernels.spatially_invariant())
                kernels.kernel_at(x, y, k);
            for (std::size_t s = 0; s < srcs.size(); ++s) {
                const int stride = padded[s].stride;
                const double* base = padded[s].data.data() + static_cast<std::size_t>(y) * stride + x;
                double acc = 0.0;
                const double* kp = k.data();
                for (int dy = 0; dy < side; ++dy, kp += side) {
                    const double* row = base + static_cast<std::size_t>(dy) * stride;
                    for (int dx = 0; dx < side; ++dx)
                        acc += kp[dx] * row[dx];
                }
                outs[s](x, y) = acc;
            }
        }
    return outs;
}

ImageF weighted_mean(const ImageF& src, const KernelField& kernels, BorderPolicy border)
{
    const ImageF* one[] = {&src};
    return std::move(weighted_means(one, kernels, border).front());
}

} // namespace ghgif
