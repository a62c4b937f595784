#include "ghgif/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ghgif/errors.hpp"

namespace ghgif {

namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

std::vector<unsigned char> read_bytes(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ColorImage planes_from_interleaved(const unsigned char* bytes, int width, int height, int channels)
{
    ColorImage img;
    for (int c = 0; c < channels; ++c)
        img.channels.emplace_back(width, height);
    const std::size_t n = static_cast<std::size_t>(width) * height;
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < channels; ++c)
            img.channels[c].pixels()[i] = bytes[i * channels + c] / 255.0;
    return img;
}

std::vector<unsigned char> interleave_8bit(const ColorImage& img)
{
    const int channels = img.channel_count();
    const std::size_t n = static_cast<std::size_t>(img.width()) * img.height();
    std::vector<unsigned char> bytes(n * channels);
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < channels; ++c) {
            const double v = std::clamp(img.channels[c].pixels()[i], 0.0, 1.0);
            bytes[i * channels + c] = static_cast<unsigned char>(std::lround(v * 255.0));
        }
    return bytes;
}

void check_writable(const ColorImage& img)
{
    if (img.channels.empty() || (img.channel_count() != 1 && img.channel_count() != 3))
        throw ParameterError("write_image: expected 1 or 3 channels");
    for (const auto& ch : img.channels) {
        require_same_shape(img.channels.front(), ch, "write_image");
        require_finite(ch, "write_image");
    }
}

// ---- PNG -----------------------------------------------------------------

ColorImage read_png(const fs::path& path)
{
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str()))
        throw IoError("cannot read PNG " + path.string() + ": " + image.message);
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        png_image_free(&image);
        throw IoError("cannot decode PNG " + path.string() + ": " + image.message);
    }
    return planes_from_interleaved(buffer.data(), static_cast<int>(image.width), static_cast<int>(image.height),
                                   color ? 3 : 1);
}

void write_png(const fs::path& path, const ColorImage& img)
{
    const auto bytes = interleave_8bit(img);
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = img.channel_count() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, bytes.data(), 0, nullptr))
        throw IoError("cannot write PNG " + path.string() + ": " + image.message);
}

// ---- PNM -----------------------------------------------------------------

class PnmTokenizer {
public:
    explicit PnmTokenizer(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

    std::string next()
    {
        skip_space_and_comments();
        std::string tok;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]))
            tok.push_back(static_cast<char>(bytes_[pos_++]));
        if (tok.empty())
            throw IoError("truncated PNM header");
        return tok;
    }

    int next_int()
    {
        const auto tok = next();
        try {
            return std::stoi(tok);
        } catch (const std::exception&) {
            throw IoError("bad PNM token '" + tok + "'");
        }
    }

    // The single whitespace byte after maxval precedes binary data.
    std::size_t binary_start() const { return pos_ + 1; }

private:
    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    std::size_t pos_ = 0;
};

ColorImage read_pnm(const fs::path& path)
{
    const auto bytes = read_bytes(path);
    PnmTokenizer tok(bytes);
    const std::string magic = tok.next();
    int channels = 0;
    bool binary = false;
    if (magic == "P5" || magic == "P2")
        channels = 1;
    else if (magic == "P6" || magic == "P3")
        channels = 3;
    else
        throw IoError(path.string() + ": unsupported PNM magic '" + magic + "'");
    binary = magic == "P5" || magic == "P6";

    const int width = tok.next_int();
    const int height = tok.next_int();
    const int maxval = tok.next_int();
    if (width < 1 || height < 1)
        throw IoError(path.string() + ": bad dimensions");
    if (maxval < 1 || maxval > 255)
        throw IoError(path.string() + ": only 8-bit PNM is supported (maxval " + std::to_string(maxval) + ")");

    const std::size_t count = static_cast<std::size_t>(width) * height * channels;
    std::vector<unsigned char> samples(count);
    if (binary) {
        const std::size_t start = tok.binary_start();
        if (bytes.size() < start + count)
            throw IoError(path.string() + ": truncated pixel data");
        std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(start), count, samples.begin());
    } else {
        for (auto& s : samples)
            s = static_cast<unsigned char>(tok.next_int());
    }
    if (maxval != 255)
        for (auto& s : samples)
            s = static_cast<unsigned char>(std::lround(s * 255.0 / maxval));
    return planes_from_interleaved(samples.data(), width, height, channels);
}

void write_pnm(const fs::path& path, const ColorImage& img)
{
    const auto bytes = interleave_8bit(img);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << (img.channel_count() == 3 ? "P6" : "P5") << "\n" << img.width() << " " << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write failed for " + path.string());
}

// ---- RGBE ----------------------------------------------------------------

using Rgbe = std::array<unsigned char, 4>;

void rgbe_to_float(const Rgbe& p, double& r, double& g, double& b)
{
    if (p[3] == 0) {
        r = g = b = 0.0;
        return;
    }
    const double f = std::ldexp(1.0, static_cast<int>(p[3]) - (128 + 8));
    r = p[0] * f;
    g = p[1] * f;
    b = p[2] * f;
}

Rgbe float_to_rgbe(double r, double g, double b)
{
    const double v = std::max({r, g, b});
    if (v < 1e-32)
        return {0, 0, 0, 0};
    int e = 0;
    const double scale = std::frexp(v, &e) * 256.0 / v;
    return {static_cast<unsigned char>(std::max(0.0, r) * scale), static_cast<unsigned char>(std::max(0.0, g) * scale),
            static_cast<unsigned char>(std::max(0.0, b) * scale), static_cast<unsigned char>(e + 128)};
}

class ByteReader {
public:
    ByteReader(const std::vector<unsigned char>& bytes, std::size_t pos, const fs::path& path)
        : bytes_(bytes), pos_(pos), path_(path)
    {
    }

    unsigned char get()
    {
        if (pos_ >= bytes_.size())
            throw IoError(path_.string() + ": truncated RGBE data");
        return bytes_[pos_++];
    }

    bool peek_rle_marker(int width) const
    {
        if (width < 8 || width > 0x7fff || pos_ + 4 > bytes_.size())
            return false;
        return bytes_[pos_] == 2 && bytes_[pos_ + 1] == 2 && (bytes_[pos_ + 2] & 0x80) == 0;
    }

private:
    const std::vector<unsigned char>& bytes_;
    std::size_t pos_;
    const fs::path& path_;
};

void read_rle_scanline(ByteReader& in, int width, std::vector<Rgbe>& line, const fs::path& path)
{
    const unsigned char hdr[4] = {in.get(), in.get(), in.get(), in.get()};
    if (((hdr[2] << 8) | hdr[3]) != width)
        throw IoError(path.string() + ": RGBE scanline width mismatch");
    for (int c = 0; c < 4; ++c) {
        int x = 0;
        while (x < width) {
            int count = in.get();
            if (count > 128) {
                count -= 128;
                if (x + count > width)
                    throw IoError(path.string() + ": bad RGBE run");
                const unsigned char v = in.get();
                for (int i = 0; i < count; ++i)
                    line[x++][c] = v;
            } else {
                if (count == 0 || x + count > width)
                    throw IoError(path.string() + ": bad RGBE literal run");
                for (int i = 0; i < count; ++i)
                    line[x++][c] = in.get();
            }
        }
    }
}

} // namespace

ColorImage read_image(const fs::path& path)
{
    if (!fs::exists(path))
        throw IoError("no such file: " + path.string());
    const auto ext = lower_extension(path);
    if (ext == ".png")
        return read_png(path);
    if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")
        return read_pnm(path);
    if (ext == ".hdr")
        return read_rgbe(path);
    throw IoError("unsupported image extension '" + ext + "' for " + path.string());
}

void write_image(const fs::path& path, const ColorImage& img)
{
    check_writable(img);
    const auto ext = lower_extension(path);
    if (ext == ".png")
        write_png(path, img);
    else if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")
        write_pnm(path, img);
    else if (ext == ".hdr")
        write_rgbe(path, img);
    else
        throw IoError("unsupported output extension '" + ext + "' for " + path.string());
}

void write_image(const fs::path& path, const ImageF& img)
{
    write_image(path, ColorImage{{img}});
}

void write_image_rescaled(const fs::path& path, const ImageF& img)
{
    require_finite(img, "write_image_rescaled");
    const double lo = min_value(img);
    const double hi = max_value(img);
    ImageF scaled(img.width(), img.height(), 0.0);
    if (hi > lo)
        for (std::size_t i = 0; i < img.size(); ++i)
            scaled.pixels()[i] = (img.pixels()[i] - lo) / (hi - lo);
    write_image(path, scaled);
}

ColorImage read_rgbe(const fs::path& path)
{
    const auto bytes = read_bytes(path);
    std::size_t pos = 0;
    auto next_line = [&]() {
        std::string line;
        while (pos < bytes.size() && bytes[pos] != '\n')
            line.push_back(static_cast<char>(bytes[pos++]));
        if (pos >= bytes.size())
            throw IoError(path.string() + ": truncated RGBE header");
        ++pos;
        return line;
    };

    const std::string magic = next_line();
    if (magic.rfind("#?", 0) != 0)
        throw IoError(path.string() + ": not a Radiance file");
    for (;;) {
        const std::string line = next_line();
        if (line.empty())
            break;
        if (line.rfind("FORMAT=", 0) == 0 && line != "FORMAT=32-bit_rle_rgbe")
            throw IoError(path.string() + ": unsupported " + line);
    }
    std::istringstream res(next_line());
    std::string ya, xa;
    int height = 0;
    int width = 0;
    res >> ya >> height >> xa >> width;
    if (ya != "-Y" || xa != "+X" || width < 1 || height < 1)
        throw IoError(path.string() + ": unsupported RGBE resolution line");

    ColorImage img;
    for (int c = 0; c < 3; ++c)
        img.channels.emplace_back(width, height);
    ByteReader in(bytes, pos, path);
    std::vector<Rgbe> line(width);
    for (int y = 0; y < height; ++y) {
        if (in.peek_rle_marker(width)) {
            read_rle_scanline(in, width, line, path);
        } else {
            for (auto& p : line)
                p = {in.get(), in.get(), in.get(), in.get()};
        }
        for (int x = 0; x < width; ++x)
            rgbe_to_float(line[x], img.channels[0](x, y), img.channels[1](x, y), img.channels[2](x, y));
    }
    return img;
}

void write_rgbe(const fs::path& path, const ColorImage& img)
{
    if (img.channel_count() != 3)
        throw ParameterError("write_rgbe: expected 3 channels");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y " << img.height() << " +X " << img.width() << "\n";
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const auto p = float_to_rgbe(img.channels[0](x, y), img.channels[1](x, y), img.channels[2](x, y));
            out.write(reinterpret_cast<const char*>(p.data()), 4);
        }
    if (!out)
        throw IoError("write failed for " + path.string());
}

} // namespace ghgif
