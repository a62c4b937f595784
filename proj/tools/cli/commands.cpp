#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bench.hpp"
#include "ghgif/apps.hpp"
#include "ghgif/errors.hpp"
#include "ghgif/filters.hpp"
#include "ghgif/guided.hpp"
#include "ghgif/image_io.hpp"
#include "ghgif/metrics.hpp"
#include "ghgif/weights.hpp"

namespace ghgif::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// ---- shared filter options ----------------------------------------------------

struct FilterOptions {
    std::string variant = "gh-gif";
    int r = 4;
    double epsilon = 0.04;
    std::optional<double> lambda;
    std::optional<double> sigma;
    double truncation = 3.0;
    double tau = 1e-4;
    int c = 3;
    std::optional<double> steering_h;
    std::string border = "replicate";
};

FilterOptions filter_options(int r, double epsilon)
{
    FilterOptions o;
    o.r = r;
    o.epsilon = epsilon;
    return o;
}

void add_filter_options(CLI::App* app, FilterOptions& o)
{
    app->add_option("--variant", o.variant, "gif, wgif, ggif, skwgif, rdwgif or a gh- variant")->capture_default_str();
    app->add_option("-r,--radius", o.r, "window radius")->capture_default_str();
    app->add_option("--eps", o.epsilon, "LAM regularization epsilon")->capture_default_str();
    app->add_option("--lambda", o.lambda, "PM-GF regularization (default 0.1 * eps)");
    app->add_option("--sigma", o.sigma, "PM-GF lowpass sigma (default r / 2)");
    app->add_option("--truncation", o.truncation, "Gaussian support in sigmas")->capture_default_str();
    app->add_option("--tau", o.tau, "edge-aware weight floor")->capture_default_str();
    app->add_option("--mad-c", o.c, "robust weight cutoff in MAD units")->capture_default_str();
    app->add_option("--steering-h", o.steering_h, "steering kernel scale (default r / 2)");
    app->add_option("--border", o.border, "replicate or reflect")->capture_default_str();
}

BorderPolicy parse_border(const std::string& s)
{
    if (s == "replicate")
        return BorderPolicy::replicate;
    if (s == "reflect")
        return BorderPolicy::reflect;
    throw ParameterError("unknown border policy '" + s + "' (expected replicate or reflect)");
}

const char* border_name(BorderPolicy b)
{
    return b == BorderPolicy::reflect ? "reflect" : "replicate";
}

FilterConfig to_config(const FilterOptions& o, std::ostream& err)
{
    FilterConfig cfg;
    cfg.variant = parse_variant(o.variant);
    cfg.r = o.r;
    cfg.epsilon = o.epsilon;
    cfg.lambda = o.lambda;
    cfg.sigma = o.sigma;
    cfg.truncation = o.truncation;
    cfg.tau = o.tau;
    cfg.c = o.c;
    cfg.steering_h = o.steering_h;
    cfg.border = parse_border(o.border);
    if (cfg.r < 1)
        throw ParameterError("radius must be >= 1, got " + std::to_string(cfg.r));
    if (!(cfg.epsilon > 0.0))
        throw ParameterError("eps must be > 0");
    if (o.lambda && !(*o.lambda > 0.0))
        throw ParameterError("lambda must be > 0");
    if (o.sigma && !(*o.sigma > 0.0))
        throw ParameterError("sigma must be > 0");
    if (!(cfg.truncation > 0.0))
        throw ParameterError("truncation must be > 0");
    if (family(cfg.variant) == Family::pmgf && cfg.effective_lambda() < pmgf_lambda_floor)
        err << "warning: lambda " << cfg.effective_lambda() << " is below " << pmgf_lambda_floor
            << "; flat regions may pick up spurious detail\n";
    return cfg;
}

json config_json(const FilterConfig& cfg)
{
    json j;
    j["variant"] = std::string(variant_name(cfg.variant));
    j["family"] = std::string(family_name(family(cfg.variant)));
    j["r"] = cfg.r;
    j["epsilon"] = cfg.epsilon;
    j["lambda"] = cfg.effective_lambda();
    j["sigma"] = cfg.effective_sigma();
    j["truncation"] = cfg.truncation;
    j["tau"] = cfg.tau;
    j["c"] = cfg.c;
    j["steering_h"] = cfg.effective_steering_h();
    j["border"] = border_name(cfg.border);
    return j;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f)
        throw IoError("failed writing " + path.string());
}

fs::path default_sidecar(const fs::path& output)
{
    return fs::path(output.string() + ".json");
}

void require_input(const fs::path& p)
{
    if (!fs::exists(p))
        throw IoError("input not found: " + p.string());
}

ColorImage as_color(ImageF img)
{
    ColorImage c;
    c.channels.push_back(std::move(img));
    return c;
}

ColorImage read_any(const fs::path& p)
{
    require_input(p);
    return read_image(p);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ---- filter --------------------------------------------------------------------

struct FilterCommand {
    FilterOptions filter;
    std::string input, output, guide, weight_map, sidecar;

    int run(std::ostream& out, std::ostream& err) const
    {
        const FilterConfig cfg = to_config(filter, err);
        const ColorImage in = read_any(input);
        ColorImage g = guide.empty() ? in : read_any(guide);
        if (g.channel_count() != 1 && g.channel_count() != in.channel_count())
            g = as_color(luminance(g));

        const auto t0 = std::chrono::steady_clock::now();
        const ColorImage result = guided_filter(in, g, cfg);
        const double ms = elapsed_ms(t0);
        write_image(output, result);

        out << variant_name(cfg.variant) << " r=" << cfg.r << " eps=" << cfg.epsilon;
        if (family(cfg.variant) == Family::pmgf)
            out << " lambda=" << cfg.effective_lambda() << " sigma=" << cfg.effective_sigma();
        out << " " << in.width() << "x" << in.height() << "x" << in.channel_count() << " time_ms=" << ms << "\n";

        if (!weight_map.empty())
            write_image_rescaled(weight_map, weight_for(cfg, luminance(g)));
        if (!sidecar.empty()) {
            json j;
            j["command"] = "filter";
            j["input"] = input;
            j["guide"] = guide.empty() ? input : guide;
            j["output"] = output;
            j["filter"] = config_json(cfg);
            write_text(sidecar, j.dump(2) + "\n");
        }
        return exit_ok;
    }

    static ImageF weight_for(const FilterConfig& cfg, const ImageF& g)
    {
        switch (cfg.variant) {
        case Variant::wgif:
        case Variant::gh_wgif: return eaw_w1(g, cfg.tau, cfg.border).values;
        case Variant::ggif:
        case Variant::gh_ggif: return eaw_w2(g, cfg.r, cfg.tau, cfg.border).values;
        case Variant::rdwgif:
        case Variant::gh_rdwgif: return eaw_w3(g, cfg.c).values;
        default: break;
        }
        throw ParameterError(std::string(variant_name(cfg.variant)) + " has no edge-aware weight map");
    }
};

// ---- applications ----------------------------------------------------------------

struct EnhanceCommand {
    FilterOptions filter = filter_options(16, 0.01);
    double k = 5.0;
    std::string input, output, base, sidecar;

    int run(std::ostream& out, std::ostream& err) const
    {
        EnhanceParams p;
        p.k = k;
        p.filter = to_config(filter, err);
        const ColorImage in = read_any(input);
        ColorImage enhanced, base_img;
        for (const auto& ch : in.channels) {
            auto r = detail_enhance(ch, p);
            enhanced.channels.push_back(std::move(r.enhanced));
            base_img.channels.push_back(std::move(r.base));
        }
        write_image(output, enhanced);
        if (!base.empty())
            write_image(base, base_img);

        json j;
        j["command"] = "enhance";
        j["input"] = input;
        j["output"] = output;
        j["k"] = p.k;
        j["filter"] = config_json(p.filter);
        write_text(sidecar.empty() ? default_sidecar(output) : fs::path(sidecar), j.dump(2) + "\n");
        out << "enhance k=" << p.k << " " << variant_name(p.filter.variant) << " -> " << output << "\n";
        return exit_ok;
    }
};

struct ToneMapCommand {
    FilterOptions filter = filter_options(16, 0.25);
    double c = 0.5;
    double target_contrast = 100.0;
    bool c_sweep = false;
    std::string input, output, sidecar;

    int run(std::ostream& out, std::ostream& err) const
    {
        ToneMapParams p;
        p.target_contrast = target_contrast;
        p.filter = to_config(filter, err);
        const ColorImage hdr = read_any(input);

        std::vector<double> cs{c};
        if (c_sweep)
            cs = {0.3, 0.4, 0.5};
        json runs = json::array();
        for (double cv : cs) {
            p.c = cv;
            const ToneMapResult res = tone_map(hdr, p);
            fs::path dst = output;
            if (c_sweep) {
                std::ostringstream name;
                name << fs::path(output).stem().string() << "_c" << cv << fs::path(output).extension().string();
                dst = fs::path(output).parent_path() / name.str();
            }
            write_image(dst, res.display);
            json r;
            r["output"] = dst.string();
            r["c"] = cv;
            r["effective_c"] = res.effective_c;
            r["base_log_range"] = res.base_log_range;
            runs.push_back(r);
            out << "tonemap c=" << cv << " effective_c=" << res.effective_c << " -> " << dst.string() << "\n";
        }
        json j;
        j["command"] = "tonemap";
        j["input"] = input;
        j["target_contrast"] = p.target_contrast;
        j["luminance_floor"] = tone_map_floor;
        j["filter"] = config_json(p.filter);
        j["runs"] = runs;
        write_text(sidecar.empty() ? default_sidecar(output) : fs::path(sidecar), j.dump(2) + "\n");
        return exit_ok;
    }
};

struct DehazeCommand {
    FilterOptions filter = filter_options(20, 1e-3);
    DehazeParams params;
    std::vector<double> airlight;
    std::string input, output, transmission, sidecar;

    int run(std::ostream& out, std::ostream& err) const
    {
        DehazeParams p = params;
        p.filter = to_config(filter, err);
        if (!airlight.empty()) {
            if (airlight.size() != 3)
                throw ParameterError("--airlight takes three comma-separated values");
            p.airlight = std::array<double, 3>{airlight[0], airlight[1], airlight[2]};
        }
        const ColorImage hazy = read_any(input);
        const DehazeResult res = dehaze(hazy, p);
        write_image(output, res.recovered);
        if (!transmission.empty())
            write_image(transmission, res.transmission);

        json j;
        j["command"] = "dehaze";
        j["input"] = input;
        j["output"] = output;
        j["patch"] = p.patch;
        j["omega"] = p.omega;
        j["t0"] = p.t0;
        j["airlight_quantile"] = p.airlight_quantile;
        j["airlight"] = res.airlight;
        j["filter"] = config_json(p.filter);
        write_text(sidecar.empty() ? default_sidecar(output) : fs::path(sidecar), j.dump(2) + "\n");
        out << "dehaze A=(" << res.airlight[0] << ", " << res.airlight[1] << ", " << res.airlight[2] << ") -> "
            << output << "\n";
        return exit_ok;
    }
};

struct TextureCommand {
    FilterOptions filter = filter_options(8, 0.04);
    RgfParams params;
    std::string input, output, sidecar;

    int run(std::ostream& out, std::ostream& err) const
    {
        RgfParams p = params;
        p.filter = to_config(filter, err);
        const ColorImage in = read_any(input);
        write_image(output, rgf_texture_removal(in, p));

        json j;
        j["command"] = "texture";
        j["input"] = input;
        j["output"] = output;
        j["iterations"] = p.iterations;
        j["sigma_init"] = p.sigma_init;
        j["filter"] = config_json(p.filter);
        write_text(sidecar.empty() ? default_sidecar(output) : fs::path(sidecar), j.dump(2) + "\n");
        out << "texture iterations=" << p.iterations << " " << variant_name(p.filter.variant) << " -> " << output
            << "\n";
        return exit_ok;
    }
};

// ---- benchmarks ---------------------------------------------------------------------

std::vector<Variant> parse_variants(const std::vector<std::string>& names)
{
    if (names.empty())
        return {all_variants.begin(), all_variants.end()};
    std::vector<Variant> out;
    for (const auto& n : names)
        out.push_back(parse_variant(n));
    return out;
}

void emit_report(const std::vector<BenchmarkRecord>& records, const std::string& title, const std::string& report,
                 const std::string& markdown, json meta, std::ostream& out)
{
    const std::string md = render_markdown(records, title);
    if (!report.empty()) {
        write_text(report, to_jsonl(records));
        meta["records"] = records.size();
        meta["ssim"] = {{"window", SsimSettings::window},
                        {"sigma", SsimSettings::sigma},
                        {"k1", SsimSettings::k1},
                        {"k2", SsimSettings::k2},
                        {"peak", SsimSettings::peak}};
        write_text(report + ".meta.json", meta.dump(2) + "\n");
    }
    if (!markdown.empty())
        write_text(markdown, md);
    out << md;
}

struct BenchSmoothCommand {
    std::string corpus = "data/corpus";
    std::vector<std::string> variants;
    std::vector<int> radii{2, 4, 8};
    std::vector<double> epsilons{0.01, 0.04, 0.16};
    std::optional<double> lambda, sigma;
    std::string border = "replicate";
    std::uint64_t seed = 0;
    bool timing = false;
    std::string report, markdown;

    int run(std::ostream& out, std::ostream&) const
    {
        SmoothingGrid g;
        g.variants = parse_variants(variants);
        g.radii = radii;
        g.epsilons = epsilons;
        g.lambda = lambda;
        g.sigma = sigma;
        g.border = parse_border(border);
        g.timing = timing;
        g.seed = seed;
        for (int r : g.radii)
            if (r < 1)
                throw ParameterError("radius must be >= 1");
        for (double e : g.epsilons)
            if (!(e > 0.0))
                throw ParameterError("eps must be > 0");
        const auto images = load_corpus(corpus);
        const auto records = bench_smoothing(images, g);

        json meta;
        meta["command"] = "bench-smooth";
        meta["corpus"] = corpus;
        meta["images"] = images.size();
        meta["seed"] = seed;
        emit_report(records, "Self-guided smoothing on " + corpus, report, markdown, meta, out);
        return exit_ok;
    }
};

struct BenchDenoiseCommand {
    std::string corpus = "data/corpus";
    std::vector<std::string> variants;
    int r = 4;
    double epsilon = 0.04;
    std::optional<double> lambda, sigma;
    double noise_sigma = 25.0 / 255.0;
    double guide_sigma = 2.0;
    std::vector<int> cases{1, 2};
    std::string border = "replicate";
    std::uint64_t seed = 0;
    bool timing = false;
    std::string report, markdown;

    int run(std::ostream& out, std::ostream&) const
    {
        DenoiseSettings s;
        s.variants = parse_variants(variants);
        s.r = r;
        s.epsilon = epsilon;
        s.lambda = lambda;
        s.sigma = sigma;
        s.noise_sigma = noise_sigma;
        s.guide_sigma = guide_sigma;
        s.cases = cases;
        s.border = parse_border(border);
        s.timing = timing;
        s.seed = seed;
        if (r < 1 || !(epsilon > 0.0) || !(guide_sigma > 0.0) || !(noise_sigma >= 0.0))
            throw ParameterError("bench-denoise: r >= 1, eps > 0, guide sigma > 0 and noise sigma >= 0 required");
        const auto images = load_corpus(corpus);
        const auto records = bench_denoise(images, s);

        json meta;
        meta["command"] = "bench-denoise";
        meta["corpus"] = corpus;
        meta["images"] = images.size();
        meta["seed"] = seed;
        meta["noise_sigma"] = noise_sigma;
        meta["guide_sigma"] = guide_sigma;
        emit_report(records, "Denoising on " + corpus, report, markdown, meta, out);
        return exit_ok;
    }
};

struct BenchTimeCommand {
    std::vector<std::string> variants{"gif", "gh-gif"};
    int size = 512;
    int runs = 100;
    FilterOptions filter;
    std::uint64_t seed = 0;
    std::string report;

    int run(std::ostream& out, std::ostream& err) const
    {
        if (size < 1 || runs < 1)
            throw ParameterError("size and runs must be >= 1");
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        ImageF img(size, size);
        for (double& v : img.pixels())
            v = u(rng);

        std::string lines;
        out << "| filter | median ms | mean ms |\n|---|---:|---:|\n";
        for (const auto& name : variants) {
            FilterOptions o = filter;
            o.variant = name;
            const FilterConfig cfg = to_config(o, err);
            std::vector<double> times;
            for (int i = 0; i < runs; ++i) {
                const auto t0 = std::chrono::steady_clock::now();
                const ImageF res = guided_filter(img, img, cfg);
                times.push_back(elapsed_ms(t0));
            }
            std::vector<double> sorted = times;
            std::sort(sorted.begin(), sorted.end());
            const double median = sorted[sorted.size() / 2];
            double mean = 0.0;
            for (double t : times)
                mean += t / runs;
            out << "| " << variant_name(cfg.variant) << " | " << median << " | " << mean << " |\n";
            json j = config_json(cfg);
            j["size"] = size;
            j["runs"] = runs;
            j["median_ms"] = median;
            j["mean_ms"] = mean;
            j["seed"] = seed;
            lines += j.dump() + "\n";
        }
        if (!report.empty())
            write_text(report, lines);
        return exit_ok;
    }
};

// ---- selftest ------------------------------------------------------------------------

struct SelftestCommand {
    std::uint64_t seed = 0;
    std::string corpus;

    int run(std::ostream& out, std::ostream&) const
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        auto random_image = [&](int w, int h) {
            ImageF img(w, h);
            for (double& v : img.pixels())
                v = u(rng);
            return img;
        };
        bool ok = true;
        auto report = [&](const std::string& name, bool pass, double err) {
            out << (pass ? "ok   " : "FAIL ") << name << " max_err=" << err << "\n";
            ok = ok && pass;
        };

        // lowpass + highpass reconstruction
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            const ImageF img = random_image(13 + 7 * t, 11 + 5 * t);
            const GaussianSpec spec{0.5 + t, 3.0};
            worst = std::max(worst, max_abs_diff(gaussian_blur(img, spec) + highpass(img, spec), img));
        }
        report("highpass-reconstruction", worst <= 1e-9, worst);
        worst = max_abs_diff(highpass(ImageF(20, 20, 0.37), {2.0, 3.0}), ImageF(20, 20, 0.0));
        report("highpass-of-constant", worst <= 1e-9, worst);

        // structure transfer on every PM-GF run, joint and self-guided
        std::vector<std::pair<ImageF, ImageF>> pairs;
        for (int t = 0; t < 3; ++t) {
            ImageF a = random_image(24 + 8 * t, 20 + 4 * t);
            pairs.emplace_back(a, a);
            pairs.emplace_back(a, random_image(a.width(), a.height()));
        }
        if (!corpus.empty())
            for (const auto& img : load_corpus(corpus))
                pairs.emplace_back(img.image, img.image);
        for (Variant v : all_variants) {
            if (family(v) != Family::pmgf)
                continue;
            worst = 0.0;
            for (const auto& [in, g] : pairs) {
                const PmgfParams p = to_pmgf_params(filter_config(v, 4, 0.04));
                const auto d = pmgf_run(in, g, p);
                const ImageF structure = structure_transfer_decomposition(d.output, in, g, p);
                worst = std::max(worst, max_abs_diff(structure, d.alpha.alpha_bar * d.guidance_high));
            }
            report("structure-transfer " + std::string(variant_name(v)), worst <= 1e-9, worst);
        }

        // detail enhancement algebra
        {
            const ImageF img = random_image(40, 32);
            EnhanceParams p;
            p.filter.r = 4;
            const auto r = detail_enhance(img, p);
            worst = max_abs_diff(r.enhanced - r.base, p.k * (img - r.base));
            report("detail-enhance-algebra", worst <= 1e-9, worst);
        }

        // constants are fixed points of every variant
        worst = 0.0;
        const ImageF flat(30, 30, 0.42);
        for (Variant v : all_variants)
            worst = std::max(worst, max_abs_diff(guided_filter(flat, flat, filter_config(v, 3, 0.04)), flat));
        report("constant-fixed-point", worst <= 1e-9, worst);

        return ok ? exit_ok : exit_consistency;
    }
};

template <class Cmd>
void bind_io(CLI::App* sub, Cmd& cmd)
{
    sub->add_option("input", cmd.input, "input image")->required();
    sub->add_option("output", cmd.output, "output image")->required();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Guided image filtering toolkit: LAM and Gaussian-highpass guided filters"};
    app.name("ghgif");
    app.require_subcommand(1);

    FilterCommand filter;
    auto* s_filter = app.add_subcommand("filter", "filter an image with any variant");
    bind_io(s_filter, filter);
    add_filter_options(s_filter, filter.filter);
    s_filter->add_option("--guide", filter.guide, "guidance image (default: the input)");
    s_filter->add_option("--weight-map", filter.weight_map, "write the edge-aware weight map, rescaled");
    s_filter->add_option("--sidecar", filter.sidecar, "write effective parameters as JSON");

    EnhanceCommand enhance;
    auto* s_enhance = app.add_subcommand("enhance", "detail enhancement");
    bind_io(s_enhance, enhance);
    add_filter_options(s_enhance, enhance.filter);
    s_enhance->add_option("-k", enhance.k, "detail amplification")->capture_default_str();
    s_enhance->add_option("--base", enhance.base, "also write the base layer");
    s_enhance->add_option("--sidecar", enhance.sidecar, "parameter JSON (default <output>.json)");

    ToneMapCommand tonemap;
    auto* s_tonemap = app.add_subcommand("tonemap", "HDR tone mapping (.hdr input)");
    bind_io(s_tonemap, tonemap);
    add_filter_options(s_tonemap, tonemap.filter);
    s_tonemap->add_option("-c,--compression", tonemap.c, "base layer compression in (0,1)")->capture_default_str();
    s_tonemap->add_option("--target-contrast", tonemap.target_contrast, "display contrast cap")
        ->capture_default_str();
    s_tonemap->add_flag("--c-sweep", tonemap.c_sweep, "write results for c = 0.3, 0.4, 0.5");
    s_tonemap->add_option("--sidecar", tonemap.sidecar, "parameter JSON (default <output>.json)");

    DehazeCommand dehaze_cmd;
    auto* s_dehaze = app.add_subcommand("dehaze", "dark channel dehazing with guided refinement");
    bind_io(s_dehaze, dehaze_cmd);
    add_filter_options(s_dehaze, dehaze_cmd.filter);
    s_dehaze->add_option("--patch", dehaze_cmd.params.patch, "dark channel radius")->capture_default_str();
    s_dehaze->add_option("--omega", dehaze_cmd.params.omega, "haze removal strength")->capture_default_str();
    s_dehaze->add_option("--t0", dehaze_cmd.params.t0, "transmission floor")->capture_default_str();
    s_dehaze->add_option("--quantile", dehaze_cmd.params.airlight_quantile, "airlight pixel fraction")
        ->capture_default_str();
    s_dehaze->add_option("--airlight", dehaze_cmd.airlight, "fixed airlight R,G,B")->delimiter(',');
    s_dehaze->add_option("--transmission", dehaze_cmd.transmission, "also write the refined transmission");
    s_dehaze->add_option("--sidecar", dehaze_cmd.sidecar, "parameter JSON (default <output>.json)");

    TextureCommand texture;
    auto* s_texture = app.add_subcommand("texture", "rolling guidance texture removal");
    bind_io(s_texture, texture);
    add_filter_options(s_texture, texture.filter);
    s_texture->add_option("--iterations", texture.params.iterations, "guided passes after the blur")
        ->capture_default_str();
    s_texture->add_option("--sigma-init", texture.params.sigma_init, "initial Gaussian sigma")
        ->capture_default_str();
    s_texture->add_option("--sidecar", texture.sidecar, "parameter JSON (default <output>.json)");

    BenchSmoothCommand smooth;
    auto* s_smooth = app.add_subcommand("bench-smooth", "self-guided smoothing benchmark");
    s_smooth->add_option("--corpus", smooth.corpus, "image directory")->capture_default_str();
    s_smooth->add_option("--variants", smooth.variants, "subset of variants")->delimiter(',');
    s_smooth->add_option("--radii", smooth.radii, "radius grid")->delimiter(',')->capture_default_str();
    s_smooth->add_option("--eps", smooth.epsilons, "epsilon grid")->delimiter(',')->capture_default_str();
    s_smooth->add_option("--lambda", smooth.lambda, "fixed PM-GF lambda (default 0.1 * eps)");
    s_smooth->add_option("--sigma", smooth.sigma, "PM-GF sigma (default r / 2)");
    s_smooth->add_option("--border", smooth.border, "replicate or reflect")->capture_default_str();
    s_smooth->add_option("--seed", smooth.seed, "recorded in every record")->capture_default_str();
    s_smooth->add_flag("--timing", smooth.timing, "add wall_ms to records");
    s_smooth->add_option("--report", smooth.report, "JSON-lines output");
    s_smooth->add_option("--markdown", smooth.markdown, "Markdown table output");

    BenchDenoiseCommand denoise;
    auto* s_denoise = app.add_subcommand("bench-denoise", "Gaussian noise removal benchmark");
    s_denoise->add_option("--corpus", denoise.corpus, "image directory")->capture_default_str();
    s_denoise->add_option("--variants", denoise.variants, "subset of variants")->delimiter(',');
    s_denoise->add_option("-r,--radius", denoise.r, "window radius")->capture_default_str();
    s_denoise->add_option("--eps", denoise.epsilon, "LAM epsilon")->capture_default_str();
    s_denoise->add_option("--lambda", denoise.lambda, "PM-GF lambda (default 0.1 * eps)");
    s_denoise->add_option("--sigma", denoise.sigma, "PM-GF sigma (default r / 2)");
    s_denoise->add_option("--noise-sigma", denoise.noise_sigma, "noise standard deviation")->capture_default_str();
    s_denoise->add_option("--guide-sigma", denoise.guide_sigma, "case 2 guidance blur")->capture_default_str();
    s_denoise->add_option("--case", denoise.cases, "guidance cases")->delimiter(',')->capture_default_str();
    s_denoise->add_option("--border", denoise.border, "replicate or reflect")->capture_default_str();
    s_denoise->add_option("--seed", denoise.seed, "noise seed")->capture_default_str();
    s_denoise->add_flag("--timing", denoise.timing, "add wall_ms to records");
    s_denoise->add_option("--report", denoise.report, "JSON-lines output");
    s_denoise->add_option("--markdown", denoise.markdown, "Markdown table output");

    BenchTimeCommand timing;
    auto* s_time = app.add_subcommand("bench-time", "median runtime over repeated runs");
    add_filter_options(s_time, timing.filter);
    s_time->add_option("--variants", timing.variants, "variants to time")->delimiter(',')->capture_default_str();
    s_time->add_option("--size", timing.size, "square image side")->capture_default_str();
    s_time->add_option("--runs", timing.runs, "repetitions")->capture_default_str();
    s_time->add_option("--seed", timing.seed, "image seed")->capture_default_str();
    s_time->add_option("--report", timing.report, "JSON-lines output");

    SelftestCommand selftest;
    auto* s_self = app.add_subcommand("selftest", "check internal identities");
    s_self->add_option("--seed", selftest.seed, "random image seed")->capture_default_str();
    s_self->add_option("--corpus", selftest.corpus, "also check every image in this directory");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_bad_parameters;
    }

    try {
        if (s_filter->parsed())
            return filter.run(out, err);
        if (s_enhance->parsed())
            return enhance.run(out, err);
        if (s_tonemap->parsed())
            return tonemap.run(out, err);
        if (s_dehaze->parsed())
            return dehaze_cmd.run(out, err);
        if (s_texture->parsed())
            return texture.run(out, err);
        if (s_smooth->parsed())
            return smooth.run(out, err);
        if (s_denoise->parsed())
            return denoise.run(out, err);
        if (s_time->parsed())
            return timing.run(out, err);
        if (s_self->parsed())
            return selftest.run(out, err);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return exit_bad_parameters;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const ConsistencyError& e) {
        err << "consistency failure: " << e.what() << "\n";
        return exit_consistency;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_bad_parameters;
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace ghgif::cli
