#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ghgif/guided.hpp"
#include "ghgif/image.hpp"

namespace ghgif::cli {

struct NamedImage {
    std::string id; // file stem
    ImageF image;
};

/// Loads every PNG/PGM/PPM in `dir` as grayscale, sorted by file name.
/// Throws IoError on a missing directory and ParameterError when it is empty.
std::vector<NamedImage> load_corpus(const std::filesystem::path& dir);

/// One row of a benchmark report.
struct BenchmarkRecord {
    std::string filter;
    std::string family;
    int r = 0;
    double epsilon = 0.0;
    double lambda = 0.0;
    double sigma = 0.0;
    double truncation = 3.0;
    double tau = 1e-4;
    int c = 3;
    std::string border;
    std::string image;
    int guidance_case = 0; // 0 for smoothing, 1 or 2 for denoising
    double noise_sigma = 0.0;
    double guide_sigma = 0.0;
    double psnr_db = 0.0;
    double ssim = 0.0;
    std::optional<double> wall_ms; // only when timing is requested
    std::uint64_t seed = 0;
};

struct SmoothingGrid {
    std::vector<Variant> variants{all_variants.begin(), all_variants.end()};
    std::vector<int> radii{2, 4, 8};
    std::vector<double> epsilons{0.01, 0.04, 0.16};
    std::optional<double> lambda; // overrides the 0.1 eps coupling
    std::optional<double> sigma;
    BorderPolicy border = BorderPolicy::replicate;
    bool timing = false;
    std::uint64_t seed = 0;
};

/// Self-guided filtering of clean images, scored against the originals.
std::vector<BenchmarkRecord> bench_smoothing(const std::vector<NamedImage>& corpus, const SmoothingGrid& grid);

struct DenoiseSettings {
    std::vector<Variant> variants{all_variants.begin(), all_variants.end()};
    int r = 4;
    double epsilon = 0.04;
    std::optional<double> lambda;
    std::optional<double> sigma;
    BorderPolicy border = BorderPolicy::replicate;
    double noise_sigma = 25.0 / 255.0;
    double guide_sigma = 2.0; // case 2 guidance blur
    std::vector<int> cases{1, 2};
    bool timing = false;
    std::uint64_t seed = 0;
};

/// Case 1 guides with the clean image, case 2 with a Gaussian-blurred copy of
/// the noisy one. Scores are against the clean image.
std::vector<BenchmarkRecord> bench_denoise(const std::vector<NamedImage>& corpus, const DenoiseSettings& settings);

/// Zero-mean Gaussian noise from a seeded mt19937_64. `stream` separates the
/// draws for different images under one seed.
ImageF add_gaussian_noise(const ImageF& clean, double sigma, std::uint64_t seed, std::uint64_t stream = 0);

/// Canonical order: guidance case, variant, image, r, epsilon.
void sort_records(std::vector<BenchmarkRecord>& records);

std::string to_json_line(const BenchmarkRecord& rec);
std::string to_jsonl(const std::vector<BenchmarkRecord>& records);

/// Variant rows, (r, eps) columns, corpus-averaged PSNR and SSIM tables.
std::string render_markdown(const std::vector<BenchmarkRecord>& records, const std::string& title);

/// Worker count: GHGIF_THREADS when set and positive, else the hardware count.
unsigned worker_count();

} // namespace ghgif::cli
