#pragma once

#include <complex>

// Thin wrappers over FFTW. All transforms are in place and unnormalized;
// sign is -1 for forward, +1 for backward.
namespace ninls::detail {

using cplx = std::complex<double>;

void fft2d(cplx* data, int nx, int ny, int sign);
// 1-D transforms along x (stride ny) for every column j.
void fft_x(cplx* data, int nx, int ny, int sign);
// 1-D transforms along y (contiguous rows) for every row i.
void fft_y(cplx* data, int nx, int ny, int sign);
void fft1d(cplx* data, int n, int sign);

}  // namespace ninls::detail
