#include "ghgif/guided.hpp"

#include <cctype>
#include <string>

#include "ghgif/errors.hpp"

namespace ghgif {

Family family(Variant v) noexcept
{
    return static_cast<int>(v) < static_cast<int>(Variant::gh_gif) ? Family::lam : Family::pmgf;
}

std::string_view variant_name(Variant v) noexcept
{
    switch (v) {
    case Variant::gif: return "gif";
    case Variant::wgif: return "wgif";
    case Variant::ggif: return "ggif";
    case Variant::skwgif: return "skwgif";
    case Variant::rdwgif: return "rdwgif";
    case Variant::gh_gif: return "gh-gif";
    case Variant::gh_wgif: return "gh-wgif";
    case Variant::gh_ggif: return "gh-ggif";
    case Variant::gh_skwgif: return "gh-skwgif";
    case Variant::gh_rdwgif: return "gh-rdwgif";
    }
    return "?";
}

std::string_view family_name(Family f) noexcept
{
    return f == Family::lam ? "LAM" : "PM-GF";
}

Variant parse_variant(std::string_view name)
{
    std::string norm(name);
    for (char& ch : norm) {
        if (ch == '_')
            ch = '-';
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    for (Variant v : all_variants)
        if (variant_name(v) == norm)
            return v;
    throw ParameterError("unknown variant '" + std::string(name) + "'");
}

Variant counterpart(Variant v) noexcept
{
    const int i = static_cast<int>(v);
    return static_cast<Variant>(i < 5 ? i + 5 : i - 5);
}

LamParams to_lam_params(const FilterConfig& cfg)
{
    if (family(cfg.variant) != Family::lam)
        throw ParameterError("to_lam_params: " + std::string(variant_name(cfg.variant)) + " is not a LAM variant");
    LamParams p;
    p.r = cfg.r;
    p.epsilon = cfg.epsilon;
    p.variant = static_cast<LamVariant>(static_cast<int>(cfg.variant));
    p.tau = cfg.tau;
    p.c = cfg.c;
    p.steering_h = cfg.steering_h;
    p.border = cfg.border;
    return p;
}

PmgfParams to_pmgf_params(const FilterConfig& cfg)
{
    if (family(cfg.variant) != Family::pmgf)
        throw ParameterError("to_pmgf_params: " + std::string(variant_name(cfg.variant)) + " is not a PM-GF variant");
    PmgfParams p;
    p.r = cfg.r;
    p.lambda = cfg.effective_lambda();
    p.sigma = cfg.sigma;
    p.truncation = cfg.truncation;
    p.variant = static_cast<PmgfVariant>(static_cast<int>(cfg.variant) - 5);
    p.border = cfg.border;
    p.tau = cfg.tau;
    p.c = cfg.c;
    p.steering_h = cfg.steering_h;
    return p;
}

ImageF guided_filter(const ImageF& input, const ImageF& guidance, const FilterConfig& cfg)
{
    if (family(cfg.variant) == Family::lam)
        return lam_filter(input, guidance, to_lam_params(cfg));
    return pmgf_filter(input, guidance, to_pmgf_params(cfg));
}

ColorImage guided_filter(const ColorImage& input, const ColorImage& guidance, const FilterConfig& cfg)
{
    if (guidance.channel_count() != 1 && guidance.channel_count() != input.channel_count())
        throw ParameterError("guidance must have 1 channel or as many channels as the input");
    ColorImage out;
    for (int k = 0; k < input.channel_count(); ++k) {
        const ImageF& g = guidance.channel_count() == 1 ? guidance.channels[0] : guidance.channels[k];
        out.channels.push_back(guided_filter(input.channels[k], g, cfg));
    }
    return out;
}

} // namespace ghgif
