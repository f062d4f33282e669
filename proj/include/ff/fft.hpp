#pragma once

#include <complex>
#include <vector>

namespace ff {

/// Forward DFT c_k = (1/M) sum_m v_m exp(-2 pi i k m / M) (FFTW backend).
std::vector<std::complex<double>> dft_forward(const std::vector<double>& v);

std::vector<std::complex<double>> dft_forward(
    const std::vector<std::complex<double>>& v);

/// Unnormalized inverse transform sum_k c_k exp(+2 pi i k m / M).
std::vector<std::complex<double>> dft_backward(
    const std::vector<std::complex<double>>& c);

}  // namespace ff
