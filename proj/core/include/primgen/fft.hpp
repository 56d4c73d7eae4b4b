#pragma once

#include "primgen/field.hpp"

namespace primgen {

// Unnormalized forward 2D DFT. Radix-2, so field sides must be powers of two.
ComplexField forward_fft2(const RealField& field);

// Normalized inverse 2D DFT, returning the real part. If imag_residual is
// non-null it receives the max |imag| of the inverse, which must stay below
// 1e-5 for conjugate-symmetric spectra.
RealField inverse_fft2(const ComplexField& field, double* imag_residual = nullptr);

// In-place 1D radix-2 transform used by both directions (inverse here is
// unnormalized; the 2D wrapper applies the 1/(H*W) factor).
void fft_radix2(std::complex<double>* data, int n, bool inverse);

}  // namespace primgen
