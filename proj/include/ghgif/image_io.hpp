#pragma once

#include <filesystem>

#include "ghgif/image.hpp"

namespace ghgif {

/// Reads an 8-bit PNG, PGM or PPM (binary or ASCII). Samples are scaled by
/// 1/255 into [0,1]. Gray files give one channel, color files three; alpha is
/// dropped. Throws IoError.
ColorImage read_image(const std::filesystem::path& path);

/// Writes PNG or PGM/PPM depending on the extension. Values are clamped to
/// [0,1] and rounded to 8 bits.
void write_image(const std::filesystem::path& path, const ColorImage& img);
void write_image(const std::filesystem::path& path, const ImageF& img);

/// Writes `img` linearly rescaled so that its min maps to 0 and its max to 1.
/// Used for weight maps and highpass layers.
void write_image_rescaled(const std::filesystem::path& path, const ImageF& img);

/// Radiance RGBE (.hdr): flat and new-style run-length scanlines, -Y +X
/// orientation only. Returns three channels of linear radiance.
ColorImage read_rgbe(const std::filesystem::path& path);

/// Flat (uncompressed) RGBE writer.
void write_rgbe(const std::filesystem::path& path, const ColorImage& img);

} // namespace ghgif
