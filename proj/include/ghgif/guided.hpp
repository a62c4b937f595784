#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ghgif/image.hpp"
#include "ghgif/lam.hpp"
#include "ghgif/pmgf.hpp"

namespace ghgif {

/// Both filter families behind one selector. Each LAM variant has a PM-GF
/// counterpart that swaps the prior and keeps the weight/averaging scheme.
enum class Variant { gif, wgif, ggif, skwgif, rdwgif, gh_gif, gh_wgif, gh_ggif, gh_skwgif, gh_rdwgif };

enum class Family { lam, pmgf };

inline constexpr std::array<Variant, 10> all_variants{Variant::gif,    Variant::wgif,      Variant::ggif,
                                                      Variant::skwgif, Variant::rdwgif,    Variant::gh_gif,
                                                      Variant::gh_wgif, Variant::gh_ggif, Variant::gh_skwgif,
                                                      Variant::gh_rdwgif};

Family family(Variant v) noexcept;
std::string_view variant_name(Variant v) noexcept; // "gif", "gh-gif", ...
std::string_view family_name(Family f) noexcept;   // "LAM", "PM-GF"
Variant parse_variant(std::string_view name);      // throws ParameterError
Variant counterpart(Variant v) noexcept;           // gif <-> gh-gif, ...

/// Parameters for any variant. `epsilon` drives the LAM filters; PM-GF
/// filters use `lambda`, defaulting to 0.1 * epsilon when unset.
struct FilterConfig {
    Variant variant = Variant::gh_gif;
    int r = 4;
    double epsilon = 0.04;
    std::optional<double> lambda;
    std::optional<double> sigma;
    double truncation = 3.0;
    double tau = 1e-4;
    int c = 3;
    std::optional<double> steering_h;
    BorderPolicy border = BorderPolicy::replicate;

    double effective_lambda() const { return lambda.value_or(0.1 * epsilon); }
    double effective_sigma() const { return sigma.value_or(0.5 * r); }
    double effective_steering_h() const { return steering_h.value_or(0.5 * r); }
};

inline FilterConfig filter_config(Variant v, int r, double epsilon)
{
    FilterConfig cfg;
    cfg.variant = v;
    cfg.r = r;
    cfg.epsilon = epsilon;
    return cfg;
}

LamParams to_lam_params(const FilterConfig& cfg);
PmgfParams to_pmgf_params(const FilterConfig& cfg);

ImageF guided_filter(const ImageF& input, const ImageF& guidance, const FilterConfig& cfg);

/// Per-channel filtering. A single-channel guidance steers every channel;
/// otherwise channel k is guided by guidance channel k.
ColorImage guided_filter(const ColorImage& input, const ColorImage& guidance, const FilterConfig& cfg);

} // namespace ghgif
