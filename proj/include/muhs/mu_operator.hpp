#pragma once

#include "muhs/grid.hpp"

namespace muhs {

// Green's function of A = mu - dx^2 on the circle:
// g(x) = x(x-1)/2 + 13/12 on [0,1), extended periodically; mu(g) = 1.
double green_function(double x);

// g sampled at the grid nodes, optionally shifted by x0.
Field green_kernel(GridPtr grid, double x0 = 0.0);

// A w = mean(w) - w_xx.
Field apply_A(const Field& w);

// A^{-1} as the Fourier multiplier: 1 on k=0, 1/(4 pi^2 k^2) on k != 0.
Field invert_A_spectral(const Field& w);

// A^{-1} by the explicit nested-integral formula, with cumulative
// trapezoid quadrature anchored at node 0.
Field invert_A_explicit(const Field& w);

// A^{-1} as periodic convolution with the node-sampled Green kernel.
Field convolve_green(const Field& w);

// dx A^{-1} w: multiplier 0 on k=0 and i/(2 pi k) on k != 0.
Field dx_Ainv(const Field& w);

// dx A^{-1} by the explicit antiderivative formula (test oracle).
Field dx_Ainv_explicit(const Field& w);

// Sup-norm residual of A^{-1} w_xx = -w + mean(w).
double check_inversion_identity(const Field& w);

}  // namespace muhs
