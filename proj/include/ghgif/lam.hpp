#pragma once

#include <optional>

#include "ghgif/image.hpp"

namespace ghgif {

/// Local-affine-model guided filters: output = a G + b per window, then
/// averaged over the overlapping windows.
enum class LamVariant { gif, wgif, ggif, skwgif, rdwgif };

struct LamParams {
    int r = 4;
    double epsilon = 0.04;
    LamVariant variant = LamVariant::gif;
    double tau = 1e-4;                 // w1 / w2
    int c = 3;                         // w3 cut in robust-scale units
    std::optional<double> steering_h;  // SKWGIF kernel scale, default r / 2
    BorderPolicy border = BorderPolicy::replicate;

    double effective_steering_h() const { return steering_h.value_or(0.5 * r); }
};

/// Per-window coefficients a, b indexed by window center.
struct CoeffFields {
    ImageF a;
    ImageF b;
};

struct LamResult {
    CoeffFields coeffs;
    ImageF a_avg;
    ImageF b_avg;
    ImageF output;
};

/// a = (cov(G, I) + eps w gamma) / (var(G) + eps w), b = mean(I) - a mean(G),
/// with the variant's weight w, target gamma and window moments (box means,
/// or mollifier-weighted means for RDWGIF). Throws ParameterError.
CoeffFields lam_coeffs(const ImageF& input, const ImageF& guidance, const LamParams& params);

/// avg(a) G + avg(b). avg is the box mean, the steering-kernel mean (SKWGIF)
/// or the mollifier mean (RDWGIF).
ImageF lam_filter(const ImageF& input, const ImageF& guidance, const LamParams& params);

LamResult lam_run(const ImageF& input, const ImageF& guidance, const LamParams& params);

} // namespace ghgif
