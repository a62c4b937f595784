#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <cctype>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "ghgif/errors.hpp"
#include "ghgif/filters.hpp"
#include "ghgif/image_io.hpp"
#include "ghgif/metrics.hpp"

namespace ghgif::cli {

namespace fs = std::filesystem;

std::vector<NamedImage> load_corpus(const fs::path& dir)
{
    if (!fs::is_directory(dir))
        throw IoError("corpus directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pnm")
            files.push_back(entry.path());
    }
    if (files.empty())
        throw ParameterError("corpus directory has no images: " + dir.string());
    std::sort(files.begin(), files.end());
    std::vector<NamedImage> out;
    for (const auto& f : files)
        out.push_back({f.stem().string(), luminance(read_image(f))});
    return out;
}

ImageF add_gaussian_noise(const ImageF& clean, double sigma, std::uint64_t seed, std::uint64_t stream)
{
    if (!(sigma >= 0.0))
        throw ParameterError("noise sigma must be >= 0");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> noise(0.0, sigma);
    ImageF out = clean;
    for (double& v : out.pixels())
        v += noise(rng);
    return out;
}

unsigned worker_count()
{
    if (const char* env = std::getenv("GHGIF_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && n > 0)
            return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

const char* border_name(BorderPolicy b)
{
    return b == BorderPolicy::reflect ? "reflect" : "replicate";
}

// Runs jobs[i] for every i on up to worker_count() threads.
void run_parallel(std::size_t count, const std::function<void(std::size_t)>& job)
{
    const unsigned n = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    if (n <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

BenchmarkRecord base_record(const FilterConfig& cfg, const std::string& image, std::uint64_t seed)
{
    BenchmarkRecord rec;
    rec.filter = std::string(variant_name(cfg.variant));
    rec.family = std::string(family_name(family(cfg.variant)));
    rec.r = cfg.r;
    rec.epsilon = cfg.epsilon;
    rec.lambda = cfg.effective_lambda();
    rec.sigma = cfg.effective_sigma();
    rec.truncation = cfg.truncation;
    rec.tau = cfg.tau;
    rec.c = cfg.c;
    rec.border = border_name(cfg.border);
    rec.image = image;
    rec.seed = seed;
    return rec;
}

void score(BenchmarkRecord& rec, const ImageF& clean, const ImageF& input, const ImageF& guide,
           const FilterConfig& cfg, bool timing)
{
    const auto t0 = std::chrono::steady_clock::now();
    const ImageF out = guided_filter(input, guide, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    const auto m = evaluate(clean, out);
    rec.psnr_db = m.psnr_db;
    rec.ssim = m.ssim;
    if (timing)
        rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
}

FilterConfig make_config(Variant v, int r, double eps, std::optional<double> lambda, std::optional<double> sigma,
                         BorderPolicy border)
{
    FilterConfig cfg = filter_config(v, r, eps);
    cfg.lambda = lambda;
    cfg.sigma = sigma;
    cfg.border = border;
    return cfg;
}

} // namespace

std::vector<BenchmarkRecord> bench_smoothing(const std::vector<NamedImage>& corpus, const SmoothingGrid& grid)
{
    if (corpus.empty())
        throw ParameterError("bench-smooth: empty corpus");
    std::vector<std::tuple<std::size_t, Variant, int, double>> jobs;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (Variant v : grid.variants)
            for (int r : grid.radii)
                for (double eps : grid.epsilons)
                    jobs.emplace_back(i, v, r, eps);

    std::vector<BenchmarkRecord> records(jobs.size());
    run_parallel(jobs.size(), [&](std::size_t k) {
        const auto& [i, v, r, eps] = jobs[k];
        const FilterConfig cfg = make_config(v, r, eps, grid.lambda, grid.sigma, grid.border);
        records[k] = base_record(cfg, corpus[i].id, grid.seed);
        score(records[k], corpus[i].image, corpus[i].image, corpus[i].image, cfg, grid.timing);
    });
    sort_records(records);
    return records;
}

std::vector<BenchmarkRecord> bench_denoise(const std::vector<NamedImage>& corpus, const DenoiseSettings& s)
{
    if (corpus.empty())
        throw ParameterError("bench-denoise: empty corpus");
    for (int c : s.cases)
        if (c != 1 && c != 2)
            throw ParameterError("guidance case must be 1 or 2, got " + std::to_string(c));

    std::vector<ImageF> noisy;
    std::vector<ImageF> blurred;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        noisy.push_back(add_gaussian_noise(corpus[i].image, s.noise_sigma, s.seed, i));
        blurred.push_back(gaussian_blur(noisy.back(), {s.guide_sigma, 3.0}, s.border));
    }

    std::vector<std::tuple<std::size_t, Variant, int>> jobs;
    for (int c : s.cases)
        for (std::size_t i = 0; i < corpus.size(); ++i)
            for (Variant v : s.variants)
                jobs.emplace_back(i, v, c);

    std::vector<BenchmarkRecord> records(jobs.size());
    run_parallel(jobs.size(), [&](std::size_t k) {
        const auto& [i, v, c] = jobs[k];
        const FilterConfig cfg = make_config(v, s.r, s.epsilon, s.lambda, s.sigma, s.border);
        auto& rec = records[k];
        rec = base_record(cfg, corpus[i].id, s.seed);
        rec.guidance_case = c;
        rec.noise_sigma = s.noise_sigma;
        rec.guide_sigma = c == 2 ? s.guide_sigma : 0.0;
        const ImageF& guide = c == 1 ? corpus[i].image : blurred[i];
        score(rec, corpus[i].image, noisy[i], guide, cfg, s.timing);
    });
    sort_records(records);
    return records;
}

void sort_records(std::vector<BenchmarkRecord>& records)
{
    auto key = [](const BenchmarkRecord& r) {
        return std::make_tuple(r.guidance_case, static_cast<int>(parse_variant(r.filter)), r.image, r.r, r.epsilon,
                               r.lambda, r.sigma);
    };
    std::stable_sort(records.begin(), records.end(),
                     [&](const BenchmarkRecord& a, const BenchmarkRecord& b) { return key(a) < key(b); });
}

std::string to_json_line(const BenchmarkRecord& rec)
{
    nlohmann::ordered_json j;
    j["filter"] = rec.filter;
    j["family"] = rec.family;
    j["r"] = rec.r;
    j["epsilon"] = rec.epsilon;
    j["lambda"] = rec.lambda;
    j["sigma"] = rec.sigma;
    j["truncation"] = rec.truncation;
    j["tau"] = rec.tau;
    j["c"] = rec.c;
    j["border"] = rec.border;
    j["image"] = rec.image;
    if (rec.guidance_case != 0) {
        j["case"] = rec.guidance_case;
        j["noise_sigma"] = rec.noise_sigma;
        j["guide_sigma"] = rec.guide_sigma;
    }
    // JSON has no infinity; identical images report null PSNR.
    if (std::isfinite(rec.psnr_db))
        j["psnr_db"] = rec.psnr_db;
    else
        j["psnr_db"] = nullptr;
    j["ssim"] = rec.ssim;
    if (rec.wall_ms)
        j["wall_ms"] = *rec.wall_ms;
    j["seed"] = rec.seed;
    return j.dump();
}

std::string to_jsonl(const std::vector<BenchmarkRecord>& records)
{
    std::string out;
    for (const auto& r : records)
        out += to_json_line(r) + "\n";
    return out;
}

std::string render_markdown(const std::vector<BenchmarkRecord>& records, const std::string& title)
{
    using Cell = std::tuple<int, double, double>; // r, eps, lambda
    std::vector<std::string> filters;
    std::vector<Cell> cells;
    std::map<std::tuple<int, std::string, Cell>, std::tuple<double, double, int>> sums;
    std::vector<int> cases;
    for (const auto& rec : records) {
        const Cell cell{rec.r, rec.epsilon, rec.lambda};
        if (std::find(filters.begin(), filters.end(), rec.filter) == filters.end())
            filters.push_back(rec.filter);
        if (std::find(cells.begin(), cells.end(), cell) == cells.end())
            cells.push_back(cell);
        if (std::find(cases.begin(), cases.end(), rec.guidance_case) == cases.end())
            cases.push_back(rec.guidance_case);
        auto& [p, s, n] = sums[{rec.guidance_case, rec.filter, cell}];
        p += rec.psnr_db;
        s += rec.ssim;
        ++n;
    }
    std::sort(cells.begin(), cells.end());
    std::sort(cases.begin(), cases.end());

    std::ostringstream md;
    md.setf(std::ios::fixed);
    md << "# " << title << "\n";
    for (int c : cases) {
        for (int metric = 0; metric < 2; ++metric) {
            md << "\n## Average " << (metric == 0 ? "PSNR (dB)" : "SSIM");
            if (c != 0)
                md << ", guidance case " << c;
            md << "\n\n| filter |";
            for (const auto& [r, eps, lambda] : cells) {
                md.precision(4);
                md << " r=" << r << " eps=" << eps << " |";
            }
            md << "\n|---|";
            for (std::size_t k = 0; k < cells.size(); ++k)
                md << "---:|";
            md << "\n";
            for (const auto& f : filters) {
                md << "| " << f << " |";
                for (const auto& cell : cells) {
                    const auto it = sums.find({c, f, cell});
                    if (it == sums.end()) {
                        md << " |";
                        continue;
                    }
                    const auto& [p, s, n] = it->second;
                    md.precision(metric == 0 ? 2 : 4);
                    md << " " << (metric == 0 ? p : s) / n << " |";
                }
                md << "\n";
            }
        }
    }
    return md.str();
}

} // namespace ghgif::cli
