#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "primgen/fft.hpp"
#include "primgen/spectrum.hpp"

using namespace primgen;

TEST_CASE("magnitude weight matches the closed form") {
    CHECK(magnitude_weight(1, 1, SpectralExponent(1.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(magnitude_weight(2, 0, SpectralExponent(1.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(magnitude_weight(1, 1, SpectralExponent(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(magnitude_weight(0, 0, SpectralExponent(1.0)), singularity_error);
    CHECK_THROWS_AS(magnitude_weight(0, 0, SpectralExponent(2.7)), singularity_error);
}

TEST_CASE("magnitude weight symmetry is exact") {
    for (double a : {0.5, 1.0, 2.0, 3.3}) {
        const SpectralExponent e(a);
        for (int fx = -8; fx <= 8; ++fx) {
            for (int fy = -8; fy <= 8; ++fy) {
                if (fx == 0 && fy == 0) continue;
                const double w = magnitude_weight(fx, fy, e);
                CHECK(w == magnitude_weight(-fx, fy, e));
                CHECK(w == magnitude_weight(fx, -fy, e));
                CHECK(w == magnitude_weight(-fx, -fy, e));
                CHECK(w == magnitude_weight(fy, fx, e));
            }
        }
    }
}

// Strict decay in a holds whenever some |component| >= 2. On the axes at
// |f| = 1 the weight is 1 for every a, and at (+-1, +-1) it is 1/2 for
// every a (1^a + 1^a never moves), so those bins are pinned instead.
TEST_CASE("magnitude weight monotonicity in the exponent") {
    const std::vector<std::pair<double, double>> pairs = {{0.5, 1.0}, {1.0, 2.0}, {2.0, 3.5}};
    for (auto [a1, a2] : pairs) {
        for (int fx = -6; fx <= 6; ++fx) {
            for (int fy = -6; fy <= 6; ++fy) {
                if (fx == 0 && fy == 0) continue;
                const double w1 = magnitude_weight(fx, fy, SpectralExponent(a1));
                const double w2 = magnitude_weight(fx, fy, SpectralExponent(a2));
                if (std::max(std::abs(fx), std::abs(fy)) >= 2) {
                    CHECK(w1 > w2);
                } else if (std::abs(fx) + std::abs(fy) == 1) {
                    CHECK(w1 == 1.0);
                    CHECK(w2 == 1.0);
                } else {  // (+-1, +-1)
                    CHECK(w1 == 0.5);
                    CHECK(w2 == 0.5);
                }
            }
        }
    }
}

TEST_CASE("weighted spectrum zeroes DC and keeps conjugate symmetry invertible") {
    RandomStream rng(11, 0);
    RealField noise(32, 32);
    for (double& v : noise.data) v = rng.next_normal();

    ComplexField spec = forward_fft2(noise);
    apply_magnitude_weights(spec, SpectralExponent(1.5));
    CHECK(std::abs(spec.at(0, 0)) == 0.0);

    double residual = 0.0;
    inverse_fft2(spec, &residual);
    CHECK(residual < 1e-5);
}

TEST_CASE("pink noise channel is deterministic and spans [0, 1]") {
    RandomStream r1(21, 5);
    RandomStream r2(21, 5);
    const RealField a = pink_noise_channel(64, SpectralExponent(1.0), r1);
    const RealField b = pink_noise_channel(64, SpectralExponent(1.0), r2);
    CHECK(a.data == b.data);

    const double mn = *std::min_element(a.data.begin(), a.data.end());
    const double mx = *std::max_element(a.data.begin(), a.data.end());
    CHECK(mn == 0.0);
    CHECK(mx == 1.0);
    for (double v : a.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("stdclip3 normalization stays in range and differs from minmax") {
    RandomStream r1(22, 0);
    RandomStream r2(22, 0);
    const RealField minmax = pink_noise_channel(64, SpectralExponent(1.0), r1);
    const RealField clipped =
        pink_noise_channel(64, SpectralExponent(1.0), r2, NormalizeMode::StdClip3);
    for (double v : clipped.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(minmax.data != clipped.data);
}

TEST_CASE("min-max rescale rejects a constant field") {
    RealField flat(8, 8);
    for (double& v : flat.data) v = 0.25;
    CHECK_THROWS_AS(normalize_field(flat, NormalizeMode::MinMax), rescale_error);
    CHECK_THROWS_AS(normalize_field(flat, NormalizeMode::StdClip3), rescale_error);
}

TEST_CASE("pink noise image shares one exponent and is bit-reproducible") {
    RandomStream r1(33, 2);
    RandomStream r2(33, 2);
    double a1 = 0.0, a2 = 0.0;
    const ImageBuffer img1 = pink_noise_image(32, ExponentRange(0.5, 3.5), r1,
                                              NormalizeMode::MinMax, &a1);
    const ImageBuffer img2 = pink_noise_image(32, ExponentRange(0.5, 3.5), r2,
                                              NormalizeMode::MinMax, &a2);
    CHECK(img1.data == img2.data);
    CHECK(a1 == a2);
    CHECK(a1 >= 0.5);
    CHECK(a1 <= 3.5);

    RandomStream r3(33, 3);
    double pinned = 0.0;
    pink_noise_image(32, ExponentRange(1.0, 1.0), r3, NormalizeMode::MinMax, &pinned);
    CHECK(pinned == 1.0);

    CHECK_THROWS_AS(ExponentRange(2.0, 1.0), config_error);
    CHECK_THROWS_AS(ExponentRange(-1.0, 1.0), config_error);
}

// The drawn exponent is the first uniform of the image stream, so the
// sampler distribution can be audited without synthesizing pixels.
TEST_CASE("drawn exponents pass a Kolmogorov-Smirnov uniformity check") {
    const int n = 1000;
    std::vector<double> draws;
    draws.reserve(n);
    for (int i = 0; i < n; ++i) {
        RandomStream rng(77, i);
        draws.push_back(rng.uniform(0.5, 3.5));
    }
    // Cross-check one draw against the image metadata path.
    {
        RandomStream rng(77, 0);
        double a = 0.0;
        pink_noise_image(16, ExponentRange(0.5, 3.5), rng, NormalizeMode::MinMax, &a);
        CHECK(a == draws[0]);
    }

    std::sort(draws.begin(), draws.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = (draws[i] - 0.5) / 3.0;
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i + 1) / n));
    }
    CHECK(ks < 0.05);
}

namespace {

// Independent slope oracle: ring means of log1p|F| on the 255-scaled float
// fields, least squares against log ring frequency over [2, n/4].
double float_path_slope(double a, int n, int images, std::uint64_t seed) {
    const int half = n / 2;
    std::vector<double> sum(static_cast<std::size_t>(n) * n, 0.0);
    for (int img = 0; img < images; ++img) {
        RandomStream rng(seed, img);
        for (int c = 0; c < 3; ++c) {
            RealField ch = pink_noise_channel(n, SpectralExponent(a), rng);
            for (double& v : ch.data) v *= 255.0;
            const ComplexField spec = forward_fft2(ch);
            for (int y = 0; y < n; ++y) {
                const int cy = (y + half) % n;
                for (int x = 0; x < n; ++x)
                    sum[static_cast<std::size_t>(cy) * n + (x + half) % n] +=
                        std::log1p(std::abs(spec.at(x, y)));
            }
        }
    }

    std::vector<double> ring_sum(half, 0.0), ring_count(half, 0.0);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            const double fy = y - half, fx = x - half;
            const int r = static_cast<int>(std::lround(std::sqrt(fx * fx + fy * fy)));
            if (r < 1 || r >= half) continue;
            ring_sum[r] += sum[static_cast<std::size_t>(y) * n + x] / (3.0 * images);
            ring_count[r] += 1.0;
        }

    std::vector<double> xs, ys;
    for (int k = 2; k <= n / 4; ++k) {
        xs.push_back(std::log(static_cast<double>(k)));
        ys.push_back(ring_sum[k] / ring_count[k]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return -sxy / sxx;
}

}  // namespace

TEST_CASE("pink noise honors the spectral law before quantization") {
    CHECK(std::abs(float_path_slope(1.0, 128, 16, 91) - 1.0) < 0.15);
    CHECK(std::abs(float_path_slope(2.0, 128, 16, 92) - 2.0) < 0.2);
}

// Full-scale version over 64 seeds at 256^2. The steep case carries the
// wider tolerance: the +1 inside log1p starts to matter once ring
// magnitudes approach unity at the top of the fit band.
TEST_CASE("spectral law at full scale, 64 seeds" * doctest::timeout(300)) {
    CHECK(std::abs(float_path_slope(1.0, 256, 64, 11) - 1.0) < 0.2);
    CHECK(std::abs(float_path_slope(3.0, 256, 64, 11) - 3.0) < 0.3);
}
