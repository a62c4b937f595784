#pragma once

// Pieces shared by the LAM and PM-GF engines: which regularizer weight the
// ridge term uses, and how windowed averages are taken.

#include <optional>
#include <span>
#include <vector>

#include "ghgif/image.hpp"
#include "ghgif/weights.hpp"

namespace ghgif::detail {

enum class RegularizerKind { constant, w1, w2_gamma, w3 };
enum class Averaging { box, steering, mollifier };

struct VariantTraits {
    RegularizerKind regularizer;
    Averaging moments; // window statistics inside the cost function
    Averaging output;  // averaging of per-window coefficients
};

struct Regularizer {
    std::optional<ImageF> weight; // absent means 1
    std::optional<ImageF> target; // absent means 0 (pull towards zero)
};

struct RegularizerSettings {
    int r;
    double tau;
    int c;
    BorderPolicy border;
};

Regularizer build_regularizer(RegularizerKind kind, const ImageF& guidance, const RegularizerSettings& s);

class Averager {
public:
    Averager(Averaging mode, const ImageF& guidance, int r, double steering_h, BorderPolicy border);

    std::vector<ImageF> apply(std::span<const ImageF* const> srcs) const;
    ImageF apply(const ImageF& src) const;

private:
    Averaging mode_;
    int r_;
    BorderPolicy border_;
    std::optional<KernelField> kernels_;
};

/// Per-pixel closed form (num + k w t) / (den + k w) of the weighted ridge
/// problem. A zero denominator (only reachable with w3 == 0 on a window with
/// no guidance energy) yields 0.
class Ridge {
public:
    Ridge(const Regularizer& reg, double k)
        : w_(reg.weight ? reg.weight->pixels().data() : nullptr),
          t_(reg.target ? reg.target->pixels().data() : nullptr), k_(k)
    {
    }

    double penalty(std::size_t i) const { return w_ ? k_ * w_[i] : k_; }

    double solve(double num, double den, std::size_t i) const
    {
        const double kw = penalty(i);
        const double denom = den + kw;
        if (!(denom > 0.0))
            return 0.0;
        return (t_ ? num + kw * t_[i] : num) / denom;
    }

private:
    const double* w_;
    const double* t_;
    double k_;
};

bool same_pixels(const ImageF& a, const ImageF& b);

} // namespace ghgif::detail
