#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "primgen/errors.hpp"

namespace primgen {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline void check_field_size(int width, int height) {
    if (width != height)
        throw dimension_error("field must be square, got " + std::to_string(width) + "x" +
                              std::to_string(height));
    if (!is_power_of_two(width) || width < 8)
        throw dimension_error("field side must be a power of two >= 8, got " +
                              std::to_string(width));
}

// One scalar channel, row-major.
struct RealField {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    RealField() = default;
    RealField(int w, int h) : width(w), height(h) {
        check_field_size(w, h);
        data.assign(static_cast<std::size_t>(w) * h, 0.0);
    }

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return data.size(); }
};

// Complex frequency-domain field, row-major over (fy, fx) bins in FFT layout
// (bin 0 is DC). Signed frequency indexing is applied by callers.
struct ComplexField {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> data;

    ComplexField() = default;
    ComplexField(int w, int h) : width(w), height(h) {
        check_field_size(w, h);
        data.assign(static_cast<std::size_t>(w) * h, {0.0, 0.0});
    }

    std::complex<double>& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::complex<double> at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::size_t size() const { return data.size(); }
};

// Maps an unsigned FFT bin index to the signed frequency in [-n/2, n/2).
inline int signed_freq(int index, int n) { return index < n / 2 ? index : index - n; }

// H x W x 3 raster in [0,1], interleaved RGB.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // (y * width + x) * 3 + c

    ImageBuffer() = default;
    ImageBuffer(int w, int h) : width(w), height(h) {
        check_field_size(w, h);
        data.assign(static_cast<std::size_t>(w) * h * 3, 0.0);
    }

    double& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    double at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }

    RealField channel(int c) const {
        RealField f(width, height);
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) f.at(x, y) = at(x, y, c);
        return f;
    }

    void set_channel(int c, const RealField& f) {
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) at(x, y, c) = f.at(x, y);
    }
};

inline std::uint8_t quantize8(double v) {
    if (v <= 0.0) return 0;
    if (v >= 1.0) return 255;
    return static_cast<std::uint8_t>(v * 255.0 + 0.5);
}

// 8-bit interleaved RGB, the PNG export representation.
inline std::vector<std::uint8_t> to_rgb8(const ImageBuffer& img) {
    std::vector<std::uint8_t> out(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) out[i] = quantize8(img.data[i]);
    return out;
}

}  // namespace primgen
