#include "primgen/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace primgen {

double magnitude_weight(int fx, int fy, SpectralExponent a) {
    if (fx == 0 && fy == 0)
        throw singularity_error("magnitude_weight undefined at DC; caller must apply the DC rule");
    const double ax = std::pow(static_cast<double>(std::abs(fx)), a.value);
    const double ay = std::pow(static_cast<double>(std::abs(fy)), a.value);
    return 1.0 / (ax + ay);
}

void apply_magnitude_weights(ComplexField& spectrum, SpectralExponent a) {
    const int n = spectrum.width;
    for (int iy = 0; iy < n; ++iy) {
        const int fy = signed_freq(iy, n);
        for (int ix = 0; ix < n; ++ix) {
            const int fx = signed_freq(ix, n);
            if (fx == 0 && fy == 0) {
                spectrum.at(ix, iy) = 0.0;  // zero-mean before rescaling
            } else {
                spectrum.at(ix, iy) *= magnitude_weight(fx, fy, a);
            }
        }
    }
}

void normalize_field(RealField& field, NormalizeMode mode) {
    if (mode == NormalizeMode::MinMax) {
        const auto [mn, mx] = std::minmax_element(field.data.begin(), field.data.end());
        const double range = *mx - *mn;
        if (!(range > 1e-12))
            throw rescale_error("degenerate all-equal field, min-max rescale impossible");
        // Plain division so the extrema land on 0.0 and 1.0 exactly.
        const double lo = *mn;
        for (double& v : field.data) v = (v - lo) / range;
        return;
    }

    // StdClip3: mean +- 3 sigma onto [0, 1], clamped.
    double mean = 0.0;
    for (double v : field.data) mean += v;
    mean /= static_cast<double>(field.data.size());
    double var = 0.0;
    for (double v : field.data) var += (v - mean) * (v - mean);
    var /= static_cast<double>(field.data.size());
    const double sigma = std::sqrt(var);
    if (!(sigma > 1e-12))
        throw rescale_error("degenerate all-equal field, std rescale impossible");
    const double inv = 1.0 / (6.0 * sigma);
    for (double& v : field.data) v = std::clamp((v - mean) * inv + 0.5, 0.0, 1.0);
}

RealField pink_noise_channel(int resolution, SpectralExponent a, RandomStream& rng,
                             NormalizeMode mode) {
    // Degenerate filtered fields have probability ~0 but the contract says
    // resample, so bound the retries.
    for (int attempt = 0; attempt < 4; ++attempt) {
        RealField noise(resolution, resolution);
        for (double& v : noise.data) v = rng.next_normal();

        ComplexField spec = forward_fft2(noise);
        apply_magnitude_weights(spec, a);
        RealField out = inverse_fft2(spec);
        try {
            normalize_field(out, mode);
        } catch (const rescale_error&) {
            continue;
        }
        return out;
    }
    throw rescale_error("pink noise channel degenerate after repeated resampling");
}

ImageBuffer pink_noise_image(int resolution, const ExponentRange& a_range, RandomStream& rng,
                             NormalizeMode mode, double* a_out) {
    const double a = rng.uniform(a_range.lo, a_range.hi);
    if (a_out) *a_out = a;
    ImageBuffer img(resolution, resolution);
    for (int c = 0; c < 3; ++c)
        img.set_channel(c, pink_noise_channel(resolution, SpectralExponent(a), rng, mode));
    return img;
}

std::array<RealField, 3> pink_noise_triple(int resolution, SpectralExponent a,
                                           RandomStream& rng, NormalizeMode mode) {
    return {pink_noise_channel(resolution, a, rng, mode),
            pink_noise_channel(resolution, a, rng, mode),
            pink_noise_channel(resolution, a, rng, mode)};
}

}  // namespace primgen
