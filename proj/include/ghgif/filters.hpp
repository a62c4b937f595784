#pragma once

#include <vector>

#include "ghgif/image.hpp"

namespace ghgif {

struct GaussianSpec {
    double sigma = 1.0;
    /// Kernel support is ceil(truncation * sigma) taps on each side.
    double truncation = 3.0;

    int radius() const;
};

/// Normalized, symmetric 1-D kernel of length 2 * spec.radius() + 1.
std::vector<double> gaussian_kernel(const GaussianSpec& spec);

/// Mean over the (2r+1)x(2r+1) window. Running sums in both directions, so
/// the per-pixel cost does not depend on r.
ImageF box_mean(const ImageF& src, int r, BorderPolicy border = BorderPolicy::replicate);

/// Separable convolution with the truncated normalized Gaussian, horizontal
/// pass first.
ImageF gaussian_blur(const ImageF& src, const GaussianSpec& spec, BorderPolicy border = BorderPolicy::replicate);

/// src - gaussian_blur(src).
ImageF highpass(const ImageF& src, const GaussianSpec& spec, BorderPolicy border = BorderPolicy::replicate);

/// Minimum over the (2r+1)x(2r+1) window (separable). r = 0 copies.
ImageF min_filter(const ImageF& src, int r, BorderPolicy border = BorderPolicy::replicate);

} // namespace ghgif
