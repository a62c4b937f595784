#pragma once

// Unvalidated primitives shared by the filter engines. Callers validate once
// at their public entry point.

#include <vector>

#include "ghgif/image.hpp"

namespace ghgif::detail {

ImageF box_mean(const ImageF& src, int r, BorderPolicy border);
ImageF convolve_separable(const ImageF& src, const std::vector<double>& kernel, BorderPolicy border);

} // namespace ghgif::detail
