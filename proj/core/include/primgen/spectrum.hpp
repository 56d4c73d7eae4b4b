#pragma once

#include <array>

#include "primgen/fft.hpp"
#include "primgen/field.hpp"
#include "primgen/rng.hpp"

namespace primgen {

// Spectral falloff exponent a. The default sampler stays inside [0.5, 3.5];
// any positive value is accepted for analysis use.
struct SpectralExponent {
    double value;

    explicit SpectralExponent(double a) : value(a) {
        if (!(a > 0.0)) throw config_error("spectral exponent must be > 0");
    }
};

// Closed interval for drawing the exponent.
struct ExponentRange {
    double lo = 0.5;
    double hi = 3.5;

    ExponentRange() = default;
    ExponentRange(double a, double b) : lo(a), hi(b) {
        if (!(a > 0.0) || b < a) throw config_error("exponent range must satisfy 0 < lo <= hi");
    }
};

enum class NormalizeMode { MinMax, StdClip3 };

// Frequency weight 1 / (|fx|^a + |fy|^a). Undefined at DC; callers apply
// the DC rule (bin zeroed) themselves.
double magnitude_weight(int fx, int fy, SpectralExponent a);

// Multiplies each bin of an FFT-layout spectrum by magnitude_weight of its
// signed frequency and zeroes the DC bin.
void apply_magnitude_weights(ComplexField& spectrum, SpectralExponent a);

// Rescales a field to [0, 1]: MinMax maps [min, max] onto the full range,
// StdClip3 maps mean +- 3 sigma and clamps. Throws rescale_error on an
// all-equal field.
void normalize_field(RealField& field, NormalizeMode mode);

// One filtered-white-noise channel: i.i.d. standard-normal noise, forward
// FFT, per-bin magnitude weighting, inverse FFT, rescale to [0, 1].
RealField pink_noise_channel(int resolution, SpectralExponent a, RandomStream& rng,
                             NormalizeMode mode = NormalizeMode::MinMax);

// RGB image with one exponent drawn from a_range shared by all three
// channels, each channel from an independent noise draw. If a_out is
// non-null it receives the drawn exponent.
ImageBuffer pink_noise_image(int resolution, const ExponentRange& a_range, RandomStream& rng,
                             NormalizeMode mode = NormalizeMode::MinMax,
                             double* a_out = nullptr);

// The three channels of a pink texture sharing one exponent; used for the
// textured fills of the PS variants.
std::array<RealField, 3> pink_noise_triple(int resolution, SpectralExponent a,
                                           RandomStream& rng,
                                           NormalizeMode mode = NormalizeMode::MinMax);

}  // namespace primgen
