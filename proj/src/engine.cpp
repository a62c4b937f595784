#include "engine.hpp"

#include <algorithm>

#include "filters_impl.hpp"
#include "ghgif/errors.hpp"

namespace ghgif::detail {

Regularizer build_regularizer(RegularizerKind kind, const ImageF& guidance, const RegularizerSettings& s)
{
    switch (kind) {
    case RegularizerKind::constant:
        return {};
    case RegularizerKind::w1:
        return {eaw_w1(guidance, s.tau, s.border).values, std::nullopt};
    case RegularizerKind::w2_gamma:
        return {eaw_w2(guidance, s.r, s.tau, s.border).values, gamma_map(guidance, s.r, s.border).values};
    case RegularizerKind::w3:
        return {eaw_w3(guidance, s.c).values, std::nullopt};
    }
    throw ParameterError("unknown regularizer");
}

Averager::Averager(Averaging mode, const ImageF& guidance, int r, double steering_h, BorderPolicy border)
    : mode_(mode), r_(r), border_(border)
{
    if (mode == Averaging::steering)
        kernels_ = steering_kernels(guidance, r, steering_h, border);
    else if (mode == Averaging::mollifier)
        kernels_ = mollifier_kernels(r);
}

std::vector<ImageF> Averager::apply(std::span<const ImageF* const> srcs) const
{
    if (mode_ == Averaging::box) {
        std::vector<ImageF> out;
        out.reserve(srcs.size());
        for (const ImageF* s : srcs)
            out.push_back(detail::box_mean(*s, r_, border_));
        return out;
    }
    return weighted_means(srcs, *kernels_, border_);
}

ImageF Averager::apply(const ImageF& src) const
{
    if (mode_ == Averaging::box)
        return detail::box_mean(src, r_, border_);
    return weighted_mean(src, *kernels_, border_);
}

bool same_pixels(const ImageF& a, const ImageF& b)
{
    return &a == &b || a == b;
}

} // namespace ghgif::detail
