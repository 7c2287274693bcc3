#pragma once

#include <complex>
#include <vector>

namespace muhs::fft {

// Unnormalized real-to-complex DFT; returns n/2+1 coefficients.
std::vector<std::complex<double>> forward(const std::vector<double>& in);

// Inverse of forward, including the 1/n normalization.
std::vector<double> inverse(const std::vector<std::complex<double>>& spec, int n);

}  // namespace muhs::fft
