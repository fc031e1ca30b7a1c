#pragma once

#include <complex>
#include <span>
#include <vector>

// Thin FFTW wrappers. Plan creation is serialized internally (the FFTW planner
// is not thread-safe); execution is reentrant.
namespace qwle::fft {

/// Unnormalized forward DFT of a real sequence: X_k = sum_j x_j exp(-2 pi i jk/N), k = 0..N-1.
std::vector<std::complex<double>> forward_real(std::span<const double> x);

/// Unnormalized complex DFT. sign = -1 forward, +1 backward.
std::vector<std::complex<double>> transform(std::span<const std::complex<double>> x, int sign);

/// DCT-II: Y_k = 2 sum_{j<M} x_j cos(pi (j + 1/2) k / M), k = 0..M-1 (FFTW REDFT10).
std::vector<double> dct2(std::span<const double> x);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace qwle::fft
