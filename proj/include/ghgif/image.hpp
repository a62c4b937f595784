#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ghgif {

enum class BorderPolicy { replicate, reflect };

/// Maps an out-of-range index into [0, n). `reflect` mirrors with the edge
/// sample repeated (... 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...), which stays valid
/// for any offset and for n == 1.
int map_index(int i, int n, BorderPolicy border) noexcept;

/// Single-channel raster of doubles, row-major. Values are nominally in
/// [0,1] but intermediates (highpass layers, log luminance) may leave it.
class ImageF {
public:
    ImageF(int width, int height, double fill = 0.0);
    ImageF(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
    double operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

    std::span<double> row(int y) noexcept
    {
        return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
    }
    std::span<const double> row(int y) const noexcept
    {
        return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
    }

    std::span<double> pixels() noexcept { return data_; }
    std::span<const double> pixels() const noexcept { return data_; }

    bool same_shape(const ImageF& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const ImageF&, const ImageF&) = default;

private:
    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_;
    int height_;
    std::vector<double> data_;
};

/// Throws ParameterError naming the first NaN/Inf sample.
void require_finite(const ImageF& img, std::string_view what);
void require_same_shape(const ImageF& a, const ImageF& b, std::string_view what);

ImageF operator+(const ImageF& a, const ImageF& b);
ImageF operator-(const ImageF& a, const ImageF& b);
ImageF operator*(const ImageF& a, const ImageF& b);
ImageF operator*(double s, const ImageF& a);
ImageF operator+(const ImageF& a, double s);

double min_value(const ImageF& img);
double max_value(const ImageF& img);
double mean_value(const ImageF& img);
double max_abs_diff(const ImageF& a, const ImageF& b);
ImageF clamp01(const ImageF& img);

/// Planar multi-channel image (1 = gray, 3 = RGB). All planes share a shape.
struct ColorImage {
    std::vector<ImageF> channels;

    int width() const { return channels.front().width(); }
    int height() const { return channels.front().height(); }
    int channel_count() const { return static_cast<int>(channels.size()); }
};

/// Rec.601 luma: 0.299 R + 0.587 G + 0.114 B. Gray input is returned as is.
ImageF luminance(const ColorImage& img);

} // namespace ghgif
