#include "ghgif/lam.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "engine.hpp"
#include "ghgif/errors.hpp"

namespace ghgif {

namespace {

using detail::Averaging;
using detail::RegularizerKind;

detail::VariantTraits traits(LamVariant v)
{
    switch (v) {
    case LamVariant::gif:
        return {RegularizerKind::constant, Averaging::box, Averaging::box};
    case LamVariant::wgif:
        return {RegularizerKind::w1, Averaging::box, Averaging::box};
    case LamVariant::ggif:
        return {RegularizerKind::w2_gamma, Averaging::box, Averaging::box};
    case LamVariant::skwgif:
        return {RegularizerKind::constant, Averaging::box, Averaging::steering};
    case LamVariant::rdwgif:
        return {RegularizerKind::w3, Averaging::mollifier, Averaging::mollifier};
    }
    throw ParameterError("unknown LAM variant");
}

void validate(const ImageF& input, const ImageF& guidance, const LamParams& p)
{
    if (p.r < 1)
        throw ParameterError("radius r must be >= 1, got " + std::to_string(p.r));
    if (!(p.epsilon > 0.0) || !std::isfinite(p.epsilon))
        throw ParameterError("epsilon must be > 0, got " + std::to_string(p.epsilon));
    if (!(p.effective_steering_h() > 0.0))
        throw ParameterError("steering h must be > 0");
    require_same_shape(input, guidance, "guided filter input/guidance");
    require_finite(input, "guided filter input");
    require_finite(guidance, "guided filter guidance");
}

CoeffFields coefficients(const ImageF& input, const ImageF& guidance, const LamParams& p,
                         const detail::VariantTraits& t)
{
    const bool self = detail::same_pixels(input, guidance);
    const detail::Averager window(t.moments, guidance, p.r, p.effective_steering_h(), p.border);

    const ImageF gg = guidance * guidance;
    std::vector<const ImageF*> srcs{&guidance, &gg};
    ImageF gi = self ? ImageF(1, 1) : guidance * input;
    if (!self) {
        srcs.push_back(&input);
        srcs.push_back(&gi);
    }
    const auto m = window.apply(srcs);
    const ImageF& mean_g = m[0];
    const ImageF& mean_i = self ? m[0] : m[2];

    const auto reg = detail::build_regularizer(t.regularizer, guidance, {p.r, p.tau, p.c, p.border});
    const detail::Ridge ridge(reg, p.epsilon);
    ImageF a(guidance.width(), guidance.height());
    ImageF b(guidance.width(), guidance.height());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double mg = mean_g.pixels()[i];
        const double mi = mean_i.pixels()[i];
        const double var = std::max(0.0, m[1].pixels()[i] - mg * mg);
        const double cov = self ? var : m[3].pixels()[i] - mg * mi;
        const double ai = ridge.solve(cov, var, i);
        a.pixels()[i] = ai;
        b.pixels()[i] = mi - ai * mg;
    }
    return {std::move(a), std::move(b)};
}

} // namespace

CoeffFields lam_coeffs(const ImageF& input, const ImageF& guidance, const LamParams& params)
{
    validate(input, guidance, params);
    return coefficients(input, guidance, params, traits(params.variant));
}

LamResult lam_run(const ImageF& input, const ImageF& guidance, const LamParams& params)
{
    validate(input, guidance, params);
    const auto t = traits(params.variant);
    CoeffFields coeffs = coefficients(input, guidance, params, t);

    const detail::Averager avg(t.output, guidance, params.r, params.effective_steering_h(), params.border);
    const ImageF* ab[] = {&coeffs.a, &coeffs.b};
    auto averaged = avg.apply(ab);

    ImageF out(input.width(), input.height());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.pixels()[i] = averaged[0].pixels()[i] * guidance.pixels()[i] + averaged[1].pixels()[i];
    return {std::move(coeffs), std::move(averaged[0]), std::move(averaged[1]), std::move(out)};
}

ImageF lam_filter(const ImageF& input, const ImageF& guidance, const LamParams& params)
{
    return std::move(lam_run(input, guidance, params).output);
}

} // namespace ghgif
