#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "primgen/field.hpp"

namespace primgen {

struct RadialBin {
    int freq = 0;     // integer ring radius
    double mean = 0;  // ring mean of the magnitude field
};

// Averaged magnitude statistics of a dataset. The field is log(1 + |F|)
// (or plain |F| with log_magnitude = false) averaged over images and
// channels, fftshift-centered so DC sits at (H/2, H/2). Magnitudes are
// taken over the native 8-bit pixel scale [0, 255].
struct SpectrumStats {
    int resolution = 0;
    bool log_magnitude = true;
    RealField mean_magnitude;
    std::uint64_t samples = 0;  // images
    std::vector<RadialBin> profile;  // rings 1 .. H/2-1, DC and Nyquist excluded
};

// Streaming accumulator; partial accumulators merge commutatively up to
// float reduction order.
class SpectrumAccumulator {
public:
    explicit SpectrumAccumulator(int resolution, bool log_magnitude = true);

    // One decoded image at 8-bit scale; gray data is treated as three
    // identical channels.
    void add_rgb8(const std::uint8_t* data, int width, int height, int channels);

    // Convenience for in-memory buffers: quantizes to 8 bits first so the
    // result matches the PNG path exactly.
    void add(const ImageBuffer& image);

    void merge(const SpectrumAccumulator& other);
    SpectrumStats finalize() const;

    int resolution() const { return resolution_; }
    std::uint64_t samples() const { return samples_; }

private:
    int resolution_;
    bool log_magnitude_;
    std::vector<double> sum_;  // centered layout
    std::uint64_t samples_ = 0;
};

// Scans a directory of PNGs (lexicographic filename order). Throws
// analysis_error naming the offending file on mixed resolutions or
// non-square/non-power-of-two images, and on an empty dataset.
SpectrumStats dataset_spectrum(const std::filesystem::path& dir, int workers = 1,
                               bool log_magnitude = true);

// Least-squares slope of the radial profile against log ring frequency
// over the mid-band rings [2, H/4]; returns the estimated exponent
// a_hat = -slope. Throws if fewer than 4 rings are usable.
double fit_slope(const SpectrumStats& stats);

struct SpectrumDistance {
    double ssim = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
};

// SSIM between two mean-magnitude fields: 7x7 uniform windows,
// C1 = (0.01 R)^2, C2 = (0.03 R)^2 with R the joint max-min of both
// fields; plus mean-absolute and root-mean-square differences.
SpectrumDistance spectrum_distance(const SpectrumStats& a, const SpectrumStats& b);

// Uniform-window SSIM over two equally-sized fields, exposed for tests.
double ssim_uniform(const RealField& a, const RealField& b, int window = 7);

// Mean-magnitude field as min-max normalized 8-bit grayscale pixels.
std::vector<std::uint8_t> spectrum_to_gray8(const SpectrumStats& stats);

}  // namespace primgen
