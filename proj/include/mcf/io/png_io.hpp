#pragma once

#include <string>

#include "mcf/core.hpp"

namespace mcf::io {

/// Reads a PNG as an RGB image with values in [0,1]. Grayscale inputs are
/// replicated across channels; palette images are expanded; an alpha channel
/// is dropped. Throws IoError on any failure.
Image read_image_rgb(const std::string& path);

/// Reads a PNG as a single-channel map in [0,1]; RGB inputs are averaged
/// across channels. Used for trimaps, initial mattes and confidence maps.
AlphaMap read_gray(const std::string& path);

/// Writes a grayscale PNG at 8 or 16 bits. Values are clamped to [0,1] and
/// quantized by rounding.
void write_gray(const std::string& path, const AlphaMap& map, int bits);

/// Writes an RGB PNG at 8 or 16 bits, clamping to [0,1].
void write_rgb(const std::string& path, const Image& image, int bits);

} // namespace mcf::io
