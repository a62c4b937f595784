#include "ghgif/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "filters_impl.hpp"
#include "ghgif/errors.hpp"

namespace ghgif {

namespace {

// Fills pad[0 .. n + 2*r) with row samples at offsets -r .. n + r - 1.
void fill_padded(const double* row, int n, int r, BorderPolicy border, double* pad)
{
    for (int i = 0; i < r; ++i)
        pad[i] = row[map_index(i - r, n, border)];
    std::copy(row, row + n, pad + r);
    for (int i = 0; i < r; ++i)
        pad[r + n + i] = row[map_index(n + i, n, border)];
}

void validate_spec(const GaussianSpec& spec)
{
    if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma))
        throw ParameterError("gaussian sigma must be > 0, got " + std::to_string(spec.sigma));
    if (!(spec.truncation > 0.0) || !std::isfinite(spec.truncation))
        throw ParameterError("gaussian truncation must be > 0, got " + std::to_string(spec.truncation));
}

} // namespace

int GaussianSpec::radius() const
{
    return std::max(1, static_cast<int>(std::ceil(truncation * sigma)));
}

std::vector<double> gaussian_kernel(const GaussianSpec& spec)
{
    validate_spec(spec);
    const int r = spec.radius();
    std::vector<double> k(2 * r + 1);
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        k[i + r] = std::exp(-0.5 * (i * i) / (spec.sigma * spec.sigma));
        sum += k[i + r];
    }
    for (double& v : k)
        v /= sum;
    return k;
}

namespace detail {

ImageF box_mean(const ImageF& src, int r, BorderPolicy border)
{
    const int w = src.width();
    const int h = src.height();
    const double norm = 1.0 / ((2.0 * r + 1.0) * (2.0 * r + 1.0));
    ImageF out(w, h);

    // Vertical window sums per column, advanced one row at a time.
    std::vector<double> col(w, 0.0);
    for (int k = -r; k <= r; ++k) {
        const double* s = src.row(map_index(k, h, border)).data();
        for (int x = 0; x < w; ++x)
            col[x] += s[x];
    }

    std::vector<double> pad(static_cast<std::size_t>(w) + 2 * r);
    for (int y = 0; y < h; ++y) {
        fill_padded(col.data(), w, r, border, pad.data());
        double s = 0.0;
        for (int i = 0; i <= 2 * r; ++i)
            s += pad[i];
        double* o = out.row(y).data();
        o[0] = s * norm;
        for (int x = 1; x < w; ++x) {
            s += pad[x + 2 * r] - pad[x - 1];
            o[x] = s * norm;
        }

        if (y + 1 < h) {
            const double* add = src.row(map_index(y + r + 1, h, border)).data();
            const double* sub = src.row(map_index(y - r, h, border)).data();
            for (int x = 0; x < w; ++x)
                col[x] += add[x] - sub[x];
        }
    }
    return out;
}

// o[x] = k[0] c[x] + sum_j k[j] (lo[j][x] + hi[j][x]) for x in [0, n), with
// columns taken in blocks so the partial sums stay in registers.
void symmetric_taps(const double* k, int r, const double* c, const double* const* lo, const double* const* hi,
                    double* o, int n)
{
    constexpr int block = 8;
    int x = 0;
    for (; x + block <= n; x += block) {
        double acc[block];
        for (int t = 0; t < block; ++t)
            acc[t] = k[0] * c[x + t];
        for (int j = 1; j <= r; ++j) {
            const double kj = k[j];
            const double* a = lo[j] + x;
            const double* b = hi[j] + x;
            for (int t = 0; t < block; ++t)
                acc[t] += kj * (a[t] + b[t]);
        }
        for (int t = 0; t < block; ++t)
            o[x + t] = acc[t];
    }
    for (; x < n; ++x) {
        double acc = k[0] * c[x];
        for (int j = 1; j <= r; ++j)
            acc += k[j] * (lo[j][x] + hi[j][x]);
        o[x] = acc;
    }
}

ImageF convolve_separable(const ImageF& src, const std::vector<double>& kernel, BorderPolicy border)
{
    const int w = src.width();
    const int h = src.height();
    const int r = static_cast<int>(kernel.size() - 1) / 2;
    const int taps = 2 * r + 1;
    const double* k = kernel.data() + r; // k[-r .. r], symmetric
    std::vector<const double*> lo(r + 1), hi(r + 1);

    // Horizontally filtered rows y - r .. y + r live in a ring of 2r + 1 rows,
    // so every source row goes through the horizontal pass once.
    std::vector<double> ring(static_cast<std::size_t>(taps) * w);
    std::vector<double> pad(static_cast<std::size_t>(w) + 2 * r);
    auto slot = [&](int v) { return ring.data() + static_cast<std::size_t>(((v % taps) + taps) % taps) * w; };
    auto horizontal = [&](int v) {
        fill_padded(src.row(map_index(v, h, border)).data(), w, r, border, pad.data());
        const double* p = pad.data() + r;
        for (int j = 1; j <= r; ++j) {
            lo[j] = p - j;
            hi[j] = p + j;
        }
        symmetric_taps(k, r, p, lo.data(), hi.data(), slot(v), w);
    };

    for (int v = -r; v < r; ++v)
        horizontal(v);
    ImageF out(w, h);
    for (int y = 0; y < h; ++y) {
        horizontal(y + r);
        for (int j = 1; j <= r; ++j) {
            lo[j] = slot(y - j);
            hi[j] = slot(y + j);
        }
        symmetric_taps(k, r, slot(y), lo.data(), hi.data(), out.row(y).data(), w);
    }
    return out;
}

} // namespace detail

ImageF box_mean(const ImageF& src, int r, BorderPolicy border)
{
    if (r < 1)
        throw ParameterError("box_mean radius must be >= 1, got " + std::to_string(r));
    require_finite(src, "box_mean input");
    return detail::box_mean(src, r, border);
}

ImageF gaussian_blur(const ImageF& src, const GaussianSpec& spec, BorderPolicy border)
{
    const auto kernel = gaussian_kernel(spec);
    require_finite(src, "gaussian_blur input");
    return detail::convolve_separable(src, kernel, border);
}

ImageF highpass(const ImageF& src, const GaussianSpec& spec, BorderPolicy border)
{
    return src - gaussian_blur(src, spec, border);
}

ImageF min_filter(const ImageF& src, int r, BorderPolicy border)
{
    if (r < 0)
        throw ParameterError("min_filter radius must be >= 0, got " + std::to_string(r));
    if (r == 0)
        return src;
    const int w = src.width();
    const int h = src.height();

    ImageF tmp(w, h);
    std::vector<double> pad(static_cast<std::size_t>(w) + 2 * r);
    for (int y = 0; y < h; ++y) {
        fill_padded(src.row(y).data(), w, r, border, pad.data());
        double* o = tmp.row(y).data();
        for (int x = 0; x < w; ++x)
            o[x] = *std::min_element(pad.begin() + x, pad.begin() + x + 2 * r + 1);
    }

    ImageF out(w, h);
    for (int y = 0; y < h; ++y) {
        double* o = out.row(y).data();
        std::copy(tmp.row(y).begin(), tmp.row(y).end(), o);
        for (int j = -r; j <= r; ++j) {
            const double* s = tmp.row(map_index(y + j, h, border)).data();
            for (int x = 0; x < w; ++x)
                o[x] = std::min(o[x], s[x]);
        }
    }
    return out;
}

} // namespace ghgif
