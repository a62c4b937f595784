#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "ghgif/image.hpp"

namespace testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir()
    {
        static std::atomic<int> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("ghgif-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

/// lo left of column `at`, hi from `at` on.
inline ghgif::ImageF vertical_step(int w, int h, int at, double lo, double hi)
{
    ghgif::ImageF img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img(x, y) = x < at ? lo : hi;
    return img;
}

/// Largest |difference| between horizontally adjacent pixels.
inline double max_gradient(const ghgif::ImageF& img)
{
    double m = 0.0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x + 1 < img.width(); ++x)
            m = std::max(m, std::abs(img(x + 1, y) - img(x, y)));
    return m;
}

inline double mean_of(const ghgif::ImageF& img)
{
    double s = 0.0;
    for (double v : img.pixels())
        s += v;
    return s / img.size();
}

inline double variance_of(const ghgif::ImageF& img)
{
    const double m = mean_of(img);
    double s = 0.0;
    for (double v : img.pixels())
        s += (v - m) * (v - m);
    return s / img.size();
}

} // namespace testing
