#include "primgen/fft.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace primgen {

void fft_radix2(std::complex<double>* data, int n, bool inverse) {
    // Bit-reversal permutation.
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / len;
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

namespace {

void fft2_inplace(ComplexField& f, bool inverse) {
    const int n = f.width;
    for (int y = 0; y < n; ++y) fft_radix2(f.data.data() + static_cast<std::size_t>(y) * n, n, inverse);

    std::vector<std::complex<double>> col(n);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) col[y] = f.at(x, y);
        fft_radix2(col.data(), n, inverse);
        for (int y = 0; y < n; ++y) f.at(x, y) = col[y];
    }
}

}  // namespace

ComplexField forward_fft2(const RealField& field) {
    check_field_size(field.width, field.height);
    ComplexField out(field.width, field.height);
    for (std::size_t i = 0; i < field.data.size(); ++i) out.data[i] = field.data[i];
    fft2_inplace(out, false);
    return out;
}

RealField inverse_fft2(const ComplexField& field, double* imag_residual) {
    check_field_size(field.width, field.height);
    ComplexField tmp = field;
    fft2_inplace(tmp, true);

    const double scale = 1.0 / (static_cast<double>(field.width) * field.height);
    RealField out(field.width, field.height);
    double max_imag = 0.0;
    for (std::size_t i = 0; i < tmp.data.size(); ++i) {
        out.data[i] = tmp.data[i].real() * scale;
        max_imag = std::max(max_imag, std::abs(tmp.data[i].imag() * scale));
    }
    if (imag_residual) *imag_residual = max_imag;
    return out;
}

}  // namespace primgen
