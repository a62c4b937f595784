#include "ghgif/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghgif/errors.hpp"

namespace ghgif {

int map_index(int i, int n, BorderPolicy border) noexcept
{
    if (i >= 0 && i < n)
        return i;
    if (border == BorderPolicy::replicate)
        return i < 0 ? 0 : n - 1;
    const int period = 2 * n;
    int m = i % period;
    if (m < 0)
        m += period;
    return m < n ? m : period - 1 - m;
}

ImageF::ImageF(int width, int height, double fill)
    : width_(width), height_(height)
{
    if (width < 1 || height < 1)
        throw ParameterError("image dimensions must be at least 1x1, got " + std::to_string(width) + "x" +
                             std::to_string(height));
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

ImageF::ImageF(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data))
{
    if (width < 1 || height < 1)
        throw ParameterError("image dimensions must be at least 1x1, got " + std::to_string(width) + "x" +
                             std::to_string(height));
    if (data_.size() != static_cast<std::size_t>(width) * height)
        throw ParameterError("image data length " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(width) + "x" + std::to_string(height));
}

void require_finite(const ImageF& img, std::string_view what)
{
    const auto px = img.pixels();
    const auto it = std::find_if(px.begin(), px.end(), [](double v) { return !std::isfinite(v); });
    if (it == px.end())
        return;
    const auto idx = static_cast<std::size_t>(it - px.begin());
    throw ParameterError(std::string(what) + ": non-finite value at index " + std::to_string(idx) + " (x=" +
                         std::to_string(idx % img.width()) + ", y=" + std::to_string(idx / img.width()) + ")");
}

void require_same_shape(const ImageF& a, const ImageF& b, std::string_view what)
{
    if (!a.same_shape(b))
        throw ParameterError(std::string(what) + ": dimension mismatch " + std::to_string(a.width()) + "x" +
                             std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                             std::to_string(b.height()));
}

namespace {

template <typename Op>
ImageF zip(const ImageF& a, const ImageF& b, Op op)
{
    require_same_shape(a, b, "elementwise op");
    ImageF out(a.width(), a.height());
    auto o = out.pixels();
    auto pa = a.pixels();
    auto pb = b.pixels();
    for (std::size_t i = 0; i < o.size(); ++i)
        o[i] = op(pa[i], pb[i]);
    return out;
}

} // namespace

ImageF operator+(const ImageF& a, const ImageF& b)
{
    return zip(a, b, [](double x, double y) { return x + y; });
}

ImageF operator-(const ImageF& a, const ImageF& b)
{
    return zip(a, b, [](double x, double y) { return x - y; });
}

ImageF operator*(const ImageF& a, const ImageF& b)
{
    return zip(a, b, [](double x, double y) { return x * y; });
}

ImageF operator*(double s, const ImageF& a)
{
    ImageF out = a;
    for (double& v : out.pixels())
        v *= s;
    return out;
}

ImageF operator+(const ImageF& a, double s)
{
    ImageF out = a;
    for (double& v : out.pixels())
        v += s;
    return out;
}

double min_value(const ImageF& img)
{
    return *std::min_element(img.pixels().begin(), img.pixels().end());
}

double max_value(const ImageF& img)
{
    return *std::max_element(img.pixels().begin(), img.pixels().end());
}

double mean_value(const ImageF& img)
{
    double s = 0.0;
    for (double v : img.pixels())
        s += v;
    return s / static_cast<double>(img.size());
}

double max_abs_diff(const ImageF& a, const ImageF& b)
{
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.pixels()[i] - b.pixels()[i]));
    return m;
}

ImageF clamp01(const ImageF& img)
{
    ImageF out = img;
    for (double& v : out.pixels())
        v = std::clamp(v, 0.0, 1.0);
    return out;
}

ImageF luminance(const ColorImage& img)
{
    if (img.channels.empty())
        throw ParameterError("luminance: image has no channels");
    if (img.channel_count() == 1)
        return img.channels[0];
    if (img.channel_count() != 3)
        throw ParameterError("luminance: expected 1 or 3 channels, got " + std::to_string(img.channel_count()));
    const auto& r = img.channels[0];
    const auto& g = img.channels[1];
    const auto& b = img.channels[2];
    require_same_shape(r, g, "luminance");
    require_same_shape(r, b, "luminance");
    ImageF out(r.width(), r.height());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.pixels()[i] = 0.299 * r.pixels()[i] + 0.587 * g.pixels()[i] + 0.114 * b.pixels()[i];
    return out;
}

} // namespace ghgif
