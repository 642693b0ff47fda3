#pragma once

#include <complex>
#include <vector>

namespace qarrival::num {

/// In-place radix-2 FFT, unnormalized forward transform
/// X_k = sum_j x_j exp(-2 pi i j k / n). Size must be a power of two.
void fft(std::vector<std::complex<double>>& data);

/// Inverse transform including the 1/n factor.
void ifft(std::vector<std::complex<double>>& data);

bool is_power_of_two(std::size_t n);

} // namespace qarrival::num
