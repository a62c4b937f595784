#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ghgif/guided.hpp"
#include "ghgif/image.hpp"

namespace ghgif {

// ---- detail enhancement ----------------------------------------------------

struct EnhanceParams {
    double k = 5.0;
    FilterConfig filter = filter_config(Variant::gh_gif, 16, 0.01);
};

struct EnhanceResult {
    ImageF base;
    ImageF enhanced; // base + k (I - base), not clipped
};

EnhanceResult detail_enhance(const ImageF& input, const EnhanceParams& params);
ColorImage detail_enhance(const ColorImage& input, const EnhanceParams& params);

// ---- HDR tone mapping --------------------------------------------------------

/// Base/detail split of log10 luminance; the base is compressed by c and the
/// detail kept. c is capped so the compressed base spans at most
/// log10(target_contrast) decades.
struct ToneMapParams {
    double c = 0.5;
    double target_contrast = 100.0;
    FilterConfig filter = filter_config(Variant::gh_gif, 16, 0.25);
};

struct ToneMapResult {
    ColorImage display;   // max-normalized to 1, may exceed 1 per channel
    ImageF log_luminance;
    ImageF base;
    ImageF output_log;    // c * base + (L - base)
    double effective_c;
    double base_log_range;
};

constexpr double tone_map_floor = 1e-6;

ToneMapResult tone_map(const ColorImage& hdr, const ToneMapParams& params);

// ---- dehazing ----------------------------------------------------------------

struct DehazeParams {
    int patch = 7;                    // dark channel window radius (15x15)
    double omega = 0.95;
    double t0 = 0.1;
    double airlight_quantile = 0.001; // brightest fraction of the dark channel
    std::optional<std::array<double, 3>> airlight; // skips estimation when set
    FilterConfig filter = filter_config(Variant::gh_gif, 20, 1e-3);
};

struct DehazeResult {
    ColorImage recovered; // not clipped
    ImageF dark_channel;
    ImageF raw_transmission;
    ImageF transmission;
    std::array<double, 3> airlight;
};

/// min over channels, then min over the (2 patch + 1)^2 window.
ImageF dark_channel(const ColorImage& img, int patch);
std::array<double, 3> estimate_airlight(const ColorImage& img, const ImageF& dark, double quantile);
DehazeResult dehaze(const ColorImage& hazy, const DehazeParams& params);

// ---- rolling guidance texture removal ------------------------------------------

struct RgfParams {
    int iterations = 5;
    double sigma_init = 3.0;
    FilterConfig filter = filter_config(Variant::gh_gif, 8, 0.04);
};

struct RgfResult {
    std::vector<ImageF> iterates; // J0 (Gaussian) .. J_iterations
    const ImageF& output() const { return iterates.back(); }
};

/// J0 = gaussian_blur(I); J_k = filter(input I, guidance J_{k-1}).
RgfResult rgf_texture_removal(const ImageF& input, const RgfParams& params);
ColorImage rgf_texture_removal(const ColorImage& input, const RgfParams& params);

} // namespace ghgif
