#pragma once

#include <optional>

#include "ghgif/filters.hpp"
#include "ghgif/image.hpp"

namespace ghgif {

/// Gaussian-highpass guided filters. Each window fits the single weight
/// alpha in  O(p) = alpha (G(p) - Gbar(p)) + Ibar(p),  where Gbar and Ibar are
/// Gaussian lowpass outputs; the averaged weight then scales the guidance
/// highpass layer that is transferred into the output.
enum class PmgfVariant { gh_gif, gh_wgif, gh_ggif, gh_skwgif, gh_rdwgif };

/// Below this lambda, flat guidance windows start to produce spurious detail.
constexpr double pmgf_lambda_floor = 1e-4;

struct PmgfParams {
    int r = 4;
    double lambda = 1e-3;
    std::optional<double> sigma; // lowpass scale, default r / 2
    double truncation = 3.0;
    PmgfVariant variant = PmgfVariant::gh_gif;
    BorderPolicy border = BorderPolicy::replicate;
    double tau = 1e-4;
    int c = 3;
    std::optional<double> steering_h; // default r / 2

    double effective_sigma() const { return sigma.value_or(0.5 * r); }
    double effective_steering_h() const { return steering_h.value_or(0.5 * r); }
    GaussianSpec lowpass() const { return {effective_sigma(), truncation}; }
};

struct AlphaField {
    ImageF alpha;     // per window center
    ImageF alpha_bar; // averaged over the windows covering each pixel
};

/// Every intermediate of one run, in the order they are computed.
struct PmgfDecomposition {
    ImageF guidance_low;
    ImageF input_low;
    ImageF guidance_high;
    AlphaField alpha;
    ImageF output;
};

/// alpha = (mean(HG HI) + lambda w gamma) / (mean(HG^2) + lambda w) with
/// HG = G - Gbar, HI = I - Ibar and the variant's weight, target and window
/// statistics. Throws ParameterError.
AlphaField pmgf_alpha(const ImageF& input, const ImageF& guidance, const PmgfParams& params);

/// alpha_bar (G - Gbar) + Ibar.
ImageF pmgf_filter(const ImageF& input, const ImageF& guidance, const PmgfParams& params);

PmgfDecomposition pmgf_run(const ImageF& input, const ImageF& guidance, const PmgfParams& params);

/// Returns the transferred structure layer O - Ibar after checking that it
/// equals alpha_bar (G - Gbar) within 1e-9. Throws ConsistencyError.
ImageF structure_transfer_decomposition(const ImageF& output, const ImageF& input, const ImageF& guidance,
                                        const PmgfParams& params);

/// Highpass transfer driven by the LAM slope instead of the fitted alpha:
/// box_mean(a) (G - Gbar) + Ibar with a = cov(G, I) / (var(G) + eps).
/// Diagnostic for comparing the two priors at equal coefficients.
ImageF pmgf_with_lam_slope(const ImageF& input, const ImageF& guidance, int r, double epsilon, double sigma,
                           BorderPolicy border = BorderPolicy::replicate);

} // namespace ghgif
