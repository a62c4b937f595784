#include "ghgif/pmgf.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "engine.hpp"
#include "filters_impl.hpp"
#include "ghgif/errors.hpp"
#include "ghgif/lam.hpp"

namespace ghgif {

namespace {

using detail::Averaging;
using detail::RegularizerKind;

detail::VariantTraits traits(PmgfVariant v)
{
    switch (v) {
    case PmgfVariant::gh_gif:
        return {RegularizerKind::constant, Averaging::box, Averaging::box};
    case PmgfVariant::gh_wgif:
        return {RegularizerKind::w1, Averaging::box, Averaging::box};
    case PmgfVariant::gh_ggif:
        return {RegularizerKind::w2_gamma, Averaging::box, Averaging::box};
    case PmgfVariant::gh_skwgif:
        return {RegularizerKind::constant, Averaging::box, Averaging::steering};
    case PmgfVariant::gh_rdwgif:
        return {RegularizerKind::w3, Averaging::mollifier, Averaging::mollifier};
    }
    throw ParameterError("unknown PM-GF variant");
}

void validate(const ImageF& input, const ImageF& guidance, const PmgfParams& p)
{
    if (p.r < 1)
        throw ParameterError("radius r must be >= 1, got " + std::to_string(p.r));
    if (!(p.lambda > 0.0) || !std::isfinite(p.lambda))
        throw ParameterError("lambda must be > 0, got " + std::to_string(p.lambda));
    if (!(p.effective_sigma() > 0.0) || !std::isfinite(p.effective_sigma()))
        throw ParameterError("sigma must be > 0, got " + std::to_string(p.effective_sigma()));
    if (!(p.effective_steering_h() > 0.0))
        throw ParameterError("steering h must be > 0");
    require_same_shape(input, guidance, "guided filter input/guidance");
    require_finite(input, "guided filter input");
    require_finite(guidance, "guided filter guidance");
}

// With keep_layers false the self-guided input lowpass is not duplicated and
// only `output` is meaningful.
PmgfDecomposition run(const ImageF& input, const ImageF& guidance, const PmgfParams& p, bool keep_layers)
{
    validate(input, guidance, p);
    const auto t = traits(p.variant);
    const bool self = detail::same_pixels(input, guidance);
    const auto kernel = gaussian_kernel(p.lowpass());
    const std::size_t n = guidance.size();

    // Step 1: lowpass and highpass layers.
    ImageF g_low = detail::convolve_separable(guidance, kernel, p.border);
    std::optional<ImageF> own_i_low;
    if (!self)
        own_i_low = detail::convolve_separable(input, kernel, p.border);
    const ImageF& i_low = self ? g_low : *own_i_low;

    ImageF g_high(guidance.width(), guidance.height());
    ImageF g_energy(guidance.width(), guidance.height());
    std::optional<ImageF> cross;
    if (!self)
        cross.emplace(guidance.width(), guidance.height());
    for (std::size_t i = 0; i < n; ++i) {
        const double hg = guidance.pixels()[i] - g_low.pixels()[i];
        g_high.pixels()[i] = hg;
        g_energy.pixels()[i] = hg * hg;
        if (cross)
            cross->pixels()[i] = hg * (input.pixels()[i] - i_low.pixels()[i]);
    }

    // Step 2: per-window ridge regression for alpha.
    const detail::Averager window(t.moments, guidance, p.r, p.effective_steering_h(), p.border);
    std::vector<ImageF> m;
    if (self) {
        m.push_back(window.apply(g_energy));
    } else {
        const ImageF* srcs[] = {&*cross, &g_energy};
        m = window.apply(srcs);
    }
    const ImageF& num = m.front();
    const ImageF& den = m.back();
    const auto reg = detail::build_regularizer(t.regularizer, guidance, {p.r, p.tau, p.c, p.border});
    const detail::Ridge ridge(reg, p.lambda);
    const bool strictly_regularized = t.regularizer != RegularizerKind::w3;
    ImageF alpha(guidance.width(), guidance.height());
    for (std::size_t i = 0; i < n; ++i) {
        const double d = den.pixels()[i];
        if (strictly_regularized && !(d + ridge.penalty(i) > 0.0))
            throw ConsistencyError("alpha denominator is not positive at index " + std::to_string(i));
        alpha.pixels()[i] = ridge.solve(num.pixels()[i], d, i);
    }

    // Step 3: average over the windows covering each pixel.
    const detail::Averager avg(t.output, guidance, p.r, p.effective_steering_h(), p.border);
    ImageF alpha_bar = avg.apply(alpha);

    // Step 4: transfer the weighted guidance highpass onto the smoothed input.
    ImageF out(input.width(), input.height());
    for (std::size_t i = 0; i < n; ++i)
        out.pixels()[i] = alpha_bar.pixels()[i] * g_high.pixels()[i] + i_low.pixels()[i];

    ImageF i_low_kept = own_i_low ? std::move(*own_i_low) : keep_layers ? g_low : ImageF(1, 1);
    return {std::move(g_low), std::move(i_low_kept), std::move(g_high), {std::move(alpha), std::move(alpha_bar)},
            std::move(out)};
}

} // namespace

AlphaField pmgf_alpha(const ImageF& input, const ImageF& guidance, const PmgfParams& params)
{
    return std::move(run(input, guidance, params, false).alpha);
}

ImageF pmgf_filter(const ImageF& input, const ImageF& guidance, const PmgfParams& params)
{
    return std::move(run(input, guidance, params, false).output);
}

PmgfDecomposition pmgf_run(const ImageF& input, const ImageF& guidance, const PmgfParams& params)
{
    return run(input, guidance, params, true);
}

ImageF structure_transfer_decomposition(const ImageF& output, const ImageF& input, const ImageF& guidance,
                                        const PmgfParams& params)
{
    const auto d = run(input, guidance, params, true);
    require_same_shape(output, d.output, "structure transfer");
    ImageF layer = output - d.input_low;
    double worst = 0.0;
    for (std::size_t i = 0; i < layer.size(); ++i) {
        const double expected = d.alpha.alpha_bar.pixels()[i] * d.guidance_high.pixels()[i];
        worst = std::max(worst, std::abs(layer.pixels()[i] - expected));
    }
    if (!(worst < 1e-9))
        throw ConsistencyError("structure transfer residual " + std::to_string(worst) + " exceeds 1e-9");
    return layer;
}

ImageF pmgf_with_lam_slope(const ImageF& input, const ImageF& guidance, int r, double epsilon, double sigma,
                           BorderPolicy border)
{
    LamParams lp;
    lp.r = r;
    lp.epsilon = epsilon;
    lp.border = border;
    const CoeffFields coeffs = lam_coeffs(input, guidance, lp);
    const ImageF a_bar = box_mean(coeffs.a, r, border);
    const GaussianSpec spec{sigma, 3.0};
    const ImageF g_high = highpass(guidance, spec, border);
    const ImageF i_low = gaussian_blur(input, spec, border);
    return a_bar * g_high + i_low;
}

} // namespace ghgif
