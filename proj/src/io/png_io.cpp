#include "mcf/io/png_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include <png.h>

#include "mcf/errors.hpp"

namespace mcf::io {

namespace {

struct FileHandle {
    FILE* fp = nullptr;
    ~FileHandle() {
        if (fp) std::fclose(fp);
    }
};

/// Raw pixel rows as they come out of (or go into) libpng: 1 or 3 channels,
/// 8 or 16 bits per sample, 16-bit samples big-endian per the PNG spec.
struct RawPixels {
    int width = 0;
    int height = 0;
    int channels = 0;
    int bit_depth = 0;
    std::vector<unsigned char> bytes;

    size_t row_bytes() const {
        return static_cast<size_t>(width) * channels * (bit_depth / 8);
    }
    double sample(int x, int y, int c) const {
        const size_t base =
            static_cast<size_t>(y) * row_bytes() +
            (static_cast<size_t>(x) * channels + static_cast<size_t>(c)) * (bit_depth / 8);
        if (bit_depth == 8) return bytes[base] / 255.0;
        return ((bytes[base] << 8) | bytes[base + 1]) / 65535.0;
    }
};

RawPixels read_raw(const std::string& path) {
    FileHandle file;
    file.fp = std::fopen(path.c_str(), "rb");
    if (!file.fp) throw IoError("cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng initialization failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng initialization failed");
    }

    RawPixels raw;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode PNG " + path);
    }

    png_init_io(png, file.fp);
    png_read_info(png, info);

    const png_byte color_type = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png); // no-op when no alpha channel is present
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    raw.width = static_cast<int>(png_get_image_width(png, info));
    raw.height = static_cast<int>(png_get_image_height(png, info));
    raw.channels = png_get_channels(png, info);
    raw.bit_depth = png_get_bit_depth(png, info);
    if ((raw.channels != 1 && raw.channels != 3) ||
        (raw.bit_depth != 8 && raw.bit_depth != 16)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("unsupported PNG layout in " + path);
    }

    raw.bytes.resize(raw.row_bytes() * static_cast<size_t>(raw.height));
    rows.resize(static_cast<size_t>(raw.height));
    for (int y = 0; y < raw.height; ++y) {
        rows[static_cast<size_t>(y)] = raw.bytes.data() + static_cast<size_t>(y) * raw.row_bytes();
    }
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);
    return raw;
}

void write_raw(const std::string& path, const RawPixels& raw) {
    FileHandle file;
    file.fp = std::fopen(path.c_str(), "wb");
    if (!file.fp) throw IoError("cannot open " + path + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng initialization failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng initialization failed");
    }

    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to write PNG " + path);
    }

    png_init_io(png, file.fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(raw.width),
                 static_cast<png_uint_32>(raw.height), raw.bit_depth,
                 raw.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    rows.resize(static_cast<size_t>(raw.height));
    for (int y = 0; y < raw.height; ++y) {
        rows[static_cast<size_t>(y)] = const_cast<png_bytep>(
            raw.bytes.data() + static_cast<size_t>(y) * raw.row_bytes());
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void store_sample(RawPixels& raw, size_t index, double v) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    if (raw.bit_depth == 8) {
        raw.bytes[index] = static_cast<unsigned char>(std::lround(clamped * 255.0));
    } else {
        const unsigned value = static_cast<unsigned>(std::lround(clamped * 65535.0));
        raw.bytes[index] = static_cast<unsigned char>(value >> 8);
        raw.bytes[index + 1] = static_cast<unsigned char>(value & 0xff);
    }
}

void check_bits(int bits) {
    if (bits != 8 && bits != 16) throw std::invalid_argument("bit depth must be 8 or 16");
}

} // namespace

Image read_image_rgb(const std::string& path) {
    const RawPixels raw = read_raw(path);
    Image image(raw.width, raw.height);
    for (int y = 0; y < raw.height; ++y) {
        for (int x = 0; x < raw.width; ++x) {
            for (int c = 0; c < 3; ++c) {
                image(x, y, c) = raw.sample(x, y, raw.channels == 1 ? 0 : c);
            }
        }
    }
    return image;
}

AlphaMap read_gray(const std::string& path) {
    const RawPixels raw = read_raw(path);
    AlphaMap map(raw.width, raw.height);
    for (int y = 0; y < raw.height; ++y) {
        for (int x = 0; x < raw.width; ++x) {
            double v = raw.sample(x, y, 0);
            if (raw.channels == 3) {
                v = (v + raw.sample(x, y, 1) + raw.sample(x, y, 2)) / 3.0;
            }
            map(x, y) = v;
        }
    }
    return map;
}

void write_gray(const std::string& path, const AlphaMap& map, int bits) {
    check_bits(bits);
    RawPixels raw;
    raw.width = map.width();
    raw.height = map.height();
    raw.channels = 1;
    raw.bit_depth = bits;
    raw.bytes.resize(raw.row_bytes() * static_cast<size_t>(raw.height));
    const size_t step = static_cast<size_t>(bits / 8);
    for (int i = 0; i < map.pixel_count(); ++i) {
        store_sample(raw, static_cast<size_t>(i) * step, map.value(i));
    }
    write_raw(path, raw);
}

void write_rgb(const std::string& path, const Image& image, int bits) {
    check_bits(bits);
    RawPixels raw;
    raw.width = image.width();
    raw.height = image.height();
    raw.channels = 3;
    raw.bit_depth = bits;
    raw.bytes.resize(raw.row_bytes() * static_cast<size_t>(raw.height));
    const size_t step = static_cast<size_t>(bits / 8);
    for (int i = 0; i < image.pixel_count(); ++i) {
        for (int c = 0; c < 3; ++c) {
            store_sample(raw, (static_cast<size_t>(i) * 3 + static_cast<size_t>(c)) * step,
                         image.channel(i, c));
        }
    }
    write_raw(path, raw);
}

} // namespace mcf::io
