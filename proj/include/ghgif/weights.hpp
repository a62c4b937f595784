#pragma once

#include <array>
#include <span>
#include <vector>

#include "ghgif/image.hpp"

namespace ghgif {

/// Per-pixel edge-aware weight. `degenerate` is set when a fallback
/// convention was applied (flat guidance: gamma = 1/2, w3 = 1).
struct WeightMap {
    ImageF values;
    bool degenerate = false;
};

/// Per-pixel normalized averaging kernels over a (2r+1)x(2r+1) window.
/// Either a single spatially invariant kernel or a steering field whose
/// kernels are evaluated on demand from a per-pixel 2x2 metric.
class KernelField {
public:
    /// `taps` are row-major over offsets dy = -r..r, dx = -r..r and are
    /// normalized here.
    static KernelField invariant(int radius, std::vector<double> taps);

    /// `metric[i]` = (m11, m12, m22) of pixel i; the kernel is
    /// exp(-d^T M d / (2 h^2)) * sqrt(det M), normalized per pixel.
    static KernelField steering(int width, int height, int radius, double h,
                                std::vector<std::array<double, 3>> metric);

    int radius() const noexcept { return radius_; }
    int taps_per_pixel() const noexcept { return (2 * radius_ + 1) * (2 * radius_ + 1); }
    bool spatially_invariant() const noexcept { return metric_.empty(); }

    /// Writes the normalized kernel of pixel (x, y) into `out`.
    void kernel_at(int x, int y, std::span<double> out) const;

private:
    KernelField() = default;

    int radius_ = 0;
    int width_ = 0;
    int height_ = 0;
    double h_ = 1.0;
    std::vector<double> taps_;
    std::vector<std::array<double, 3>> metric_;
};

/// Windowed variance (box mean of G^2 minus squared box mean), clamped at 0.
ImageF local_variance(const ImageF& g, int r, BorderPolicy border = BorderPolicy::replicate);

/// w1 = H / (var3x3 + tau) with H the harmonic mean of (var3x3 + tau).
WeightMap eaw_w1(const ImageF& g, double tau = 1e-4, BorderPolicy border = BorderPolicy::replicate);

/// chi = sigma_3x3 * sigma_(2r+1) (standard deviations).
ImageF chi_field(const ImageF& g, int r, BorderPolicy border = BorderPolicy::replicate);

/// w2 = H / (chi + tau) with H the harmonic mean of (chi + tau).
WeightMap eaw_w2(const ImageF& g, int r, double tau = 1e-4, BorderPolicy border = BorderPolicy::replicate);

/// gamma = 1 - 1 / (1 + exp(eta (chi - mean chi))), eta = 4 / (mean chi - min chi).
WeightMap gamma_map(const ImageF& g, int r, BorderPolicy border = BorderPolicy::replicate);

/// Maximum neighbor difference: max |G(q) - G(p)| over the in-image
/// 8-neighbors q of p.
ImageF mnd(const ImageF& g);

/// Lower median (element (n-1)/2 of the sorted values).
double lower_median(std::vector<double> values);

/// 1.4826 * median(|MND - median(MND)|).
double robust_scale(const ImageF& mnd_field);

/// Robust weight (1 - (MND / (c S))^2)^2 below the cut c S, 0 above it.
WeightMap eaw_w3(const ImageF& g, int c = 3);

/// Bump kernel exp(-1 / (1 - |t|^2)) on |t| < 1, t = offset / (r + 1).
KernelField mollifier_kernels(int r);

/// Steering kernels from the Sobel gradient covariance of `g` over a
/// (2r+1)^2 patch, regularized by delta I and scaled to unit determinant.
KernelField steering_kernels(const ImageF& g, int r, double h, BorderPolicy border = BorderPolicy::replicate);

constexpr double steering_delta = 1e-4;

/// out(p) = sum_d K_p(d) src(p + d).
ImageF weighted_mean(const ImageF& src, const KernelField& kernels, BorderPolicy border = BorderPolicy::replicate);

/// Same as weighted_mean for several images, evaluating each kernel once.
std::vector<ImageF> weighted_means(std::span<const ImageF* const> srcs, const KernelField& kernels,
                                   BorderPolicy border = BorderPolicy::replicate);

} // namespace ghgif
