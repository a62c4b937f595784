#include "ghgif/apps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ghgif/errors.hpp"
#include "ghgif/filters.hpp"

namespace ghgif {

// ---- detail enhancement ----------------------------------------------------

EnhanceResult detail_enhance(const ImageF& input, const EnhanceParams& params)
{
    if (!(params.k > 0.0) || !std::isfinite(params.k))
        throw ParameterError("enhancement factor k must be > 0, got " + std::to_string(params.k));
    ImageF base = guided_filter(input, input, params.filter);
    ImageF enhanced(input.width(), input.height());
    for (std::size_t i = 0; i < enhanced.size(); ++i) {
        const double b = base.pixels()[i];
        enhanced.pixels()[i] = b + params.k * (input.pixels()[i] - b);
    }
    return {std::move(base), std::move(enhanced)};
}

ColorImage detail_enhance(const ColorImage& input, const EnhanceParams& params)
{
    ColorImage out;
    for (const auto& ch : input.channels)
        out.channels.push_back(detail_enhance(ch, params).enhanced);
    return out;
}

// ---- HDR tone mapping --------------------------------------------------------

ToneMapResult tone_map(const ColorImage& hdr, const ToneMapParams& params)
{
    if (!(params.c > 0.0 && params.c < 1.0))
        throw ParameterError("compression factor c must lie in (0,1), got " + std::to_string(params.c));
    if (!(params.target_contrast > 1.0))
        throw ParameterError("target contrast must be > 1");
    if (hdr.channel_count() != 1 && hdr.channel_count() != 3)
        throw ParameterError("tone_map: expected 1 or 3 channels");
    for (const auto& ch : hdr.channels) {
        require_finite(ch, "tone_map radiance");
        if (min_value(ch) < 0.0)
            throw ParameterError("tone_map: negative radiance in input");
    }

    const ImageF lum = luminance(hdr);
    ImageF log_l(lum.width(), lum.height());
    for (std::size_t i = 0; i < lum.size(); ++i)
        log_l.pixels()[i] = std::log10(std::max(lum.pixels()[i], tone_map_floor));

    ImageF base = guided_filter(log_l, log_l, params.filter);
    const double range = max_value(base) - min_value(base);
    double c = params.c;
    if (range > 0.0)
        c = std::min(c, std::log10(params.target_contrast) / range);

    ImageF out_log(lum.width(), lum.height());
    for (std::size_t i = 0; i < out_log.size(); ++i) {
        const double b = base.pixels()[i];
        out_log.pixels()[i] = c * b + (log_l.pixels()[i] - b);
    }
    const double top = max_value(out_log);

    ColorImage display;
    for (const auto& ch : hdr.channels) {
        ImageF o(ch.width(), ch.height());
        for (std::size_t i = 0; i < o.size(); ++i) {
            const double l = std::max(lum.pixels()[i], tone_map_floor);
            const double out_lum = std::pow(10.0, out_log.pixels()[i] - top);
            o.pixels()[i] = hdr.channel_count() == 1 ? out_lum : ch.pixels()[i] / l * out_lum;
        }
        display.channels.push_back(std::move(o));
    }
    return {std::move(display), std::move(log_l), std::move(base), std::move(out_log), c, range};
}

// ---- dehazing ----------------------------------------------------------------

ImageF dark_channel(const ColorImage& img, int patch)
{
    if (img.channels.empty())
        throw ParameterError("dark_channel: no channels");
    ImageF m = img.channels.front();
    for (const auto& ch : img.channels) {
        require_same_shape(m, ch, "dark_channel");
        for (std::size_t i = 0; i < m.size(); ++i)
            m.pixels()[i] = std::min(m.pixels()[i], ch.pixels()[i]);
    }
    return min_filter(m, patch);
}

std::array<double, 3> estimate_airlight(const ColorImage& img, const ImageF& dark, double quantile)
{
    if (!(quantile > 0.0 && quantile <= 1.0))
        throw ParameterError("airlight quantile must lie in (0,1], got " + std::to_string(quantile));
    const std::size_t n = dark.size();
    const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(quantile * n)));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const auto px = dark.pixels();
    auto brighter = [&](std::size_t a, std::size_t b) { return px[a] > px[b] || (px[a] == px[b] && a < b); };
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(), brighter);

    std::array<double, 3> a{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < count; ++k)
        for (int c = 0; c < 3; ++c)
            a[c] += img.channels[c].pixels()[idx[k]];
    for (double& v : a)
        v /= static_cast<double>(count);
    return a;
}

DehazeResult dehaze(const ColorImage& hazy, const DehazeParams& params)
{
    if (hazy.channel_count() != 3)
        throw ParameterError("dehaze: expected an RGB image");
    if (!(params.omega > 0.0 && params.omega <= 1.0))
        throw ParameterError("omega must lie in (0,1], got " + std::to_string(params.omega));
    if (!(params.t0 > 0.0 && params.t0 < 1.0))
        throw ParameterError("t0 must lie in (0,1), got " + std::to_string(params.t0));
    if (params.patch < 0)
        throw ParameterError("dark channel patch radius must be >= 0");
    for (const auto& ch : hazy.channels)
        require_finite(ch, "dehaze input");

    ImageF dark = dark_channel(hazy, params.patch);
    const auto airlight = params.airlight ? *params.airlight : estimate_airlight(hazy, dark, params.airlight_quantile);
    for (double v : airlight)
        if (!(v > 0.0))
            throw ParameterError("degenerate atmospheric light (a channel is zero)");

    ColorImage normalized;
    for (int c = 0; c < 3; ++c)
        normalized.channels.push_back((1.0 / airlight[c]) * hazy.channels[c]);
    ImageF raw = dark_channel(normalized, params.patch);
    for (double& v : raw.pixels())
        v = 1.0 - params.omega * v;

    const ImageF gray = luminance(hazy);
    ImageF t = guided_filter(raw, gray, params.filter);

    ColorImage recovered;
    for (int c = 0; c < 3; ++c) {
        ImageF j(gray.width(), gray.height());
        for (std::size_t i = 0; i < j.size(); ++i)
            j.pixels()[i] = (hazy.channels[c].pixels()[i] - airlight[c]) / std::max(t.pixels()[i], params.t0) +
                            airlight[c];
        recovered.channels.push_back(std::move(j));
    }
    return {std::move(recovered), std::move(dark), std::move(raw), std::move(t), airlight};
}

// ---- rolling guidance texture removal ------------------------------------------

RgfResult rgf_texture_removal(const ImageF& input, const RgfParams& params)
{
    if (params.iterations < 1)
        throw ParameterError("rgf iterations must be >= 1, got " + std::to_string(params.iterations));
    RgfResult res;
    res.iterates.push_back(gaussian_blur(input, {params.sigma_init, 3.0}, params.filter.border));
    for (int k = 1; k <= params.iterations; ++k)
        res.iterates.push_back(guided_filter(input, res.iterates.back(), params.filter));
    return res;
}

ColorImage rgf_texture_removal(const ColorImage& input, const RgfParams& params)
{
    ColorImage out;
    for (const auto& ch : input.channels)
        out.channels.push_back(rgf_texture_removal(ch, params).output());
    return out;
}

} // namespace ghgif
