#include "primgen/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

#include "primgen/errors.hpp"

namespace primgen {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void write_png8(const std::filesystem::path& path, int width, int height, int channels,
                const std::vector<std::uint8_t>& pixels) {
    if (pixels.size() != static_cast<std::size_t>(width) * height * channels)
        throw format_error("pixel buffer size does not match dimensions");

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw io_error("cannot open for writing: " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw io_error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw io_error("png write failed: " + path.string());
    }

    png_init_io(png, fp.get());
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, width, height, 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    for (int y = 0; y < height; ++y)
        png_write_row(png, const_cast<png_bytep>(pixels.data() + y * stride));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

void write_png_rgb8(const std::filesystem::path& path, int width, int height,
                    const std::vector<std::uint8_t>& rgb) {
    write_png8(path, width, height, 3, rgb);
}

void write_png_gray8(const std::filesystem::path& path, int width, int height,
                     const std::vector<std::uint8_t>& gray) {
    write_png8(path, width, height, 1, gray);
}

Png8 read_png(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw io_error("cannot open for reading: " + path.string());

    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
        throw format_error("not a PNG file: " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw io_error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw format_error("corrupt PNG: " + path.string());
    }

    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    // Normalize everything to 8-bit gray or RGB.
    png_set_strip_16(png);
    png_set_packing(png);
    const int color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    Png8 out;
    out.width = static_cast<int>(png_get_image_width(png, info));
    out.height = static_cast<int>(png_get_image_height(png, info));
    out.channels = static_cast<int>(png_get_channels(png, info));
    if (out.channels != 1 && out.channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw format_error("unsupported channel count in " + path.string());
    }

    const std::size_t stride = static_cast<std::size_t>(out.width) * out.channels;
    out.data.resize(stride * out.height);
    for (int y = 0; y < out.height; ++y) png_read_row(png, out.data.data() + y * stride, nullptr);
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

}  // namespace primgen
