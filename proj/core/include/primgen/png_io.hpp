#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace primgen {

struct Png8 {
    int width = 0;
    int height = 0;
    int channels = 0;  // 1 (gray) or 3 (rgb)
    std::vector<std::uint8_t> data;
};

// 8-bit RGB PNG with fixed encoder settings, so identical pixels produce
// identical bytes on a given zlib.
void write_png_rgb8(const std::filesystem::path& path, int width, int height,
                    const std::vector<std::uint8_t>& rgb);

void write_png_gray8(const std::filesystem::path& path, int width, int height,
                     const std::vector<std::uint8_t>& gray);

// Decodes to 8-bit gray or RGB (paletted/alpha/16-bit inputs are expanded
// and stripped down).
Png8 read_png(const std::filesystem::path& path);

}  // namespace primgen
