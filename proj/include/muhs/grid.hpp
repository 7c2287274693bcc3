#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace muhs {

// Uniform grid on the unit circle S = R/Z with nodes x_j = j/n.
struct PeriodicGrid {
    int n_points;
    double spacing;
    std::vector<double> nodes;
};

using GridPtr = std::shared_ptr<const PeriodicGrid>;

// Real-valued samples of a 1-periodic function at the grid nodes.
struct Field {
    GridPtr grid;
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
};

// n_points must be even and >= 8.
GridPtr make_grid(int n_points);

Field make_field(GridPtr grid, double fill = 0.0);

// Throws if sizes disagree or any value is non-finite.
void check_field(const Field& f);

// Spectral derivative; Nyquist mode of the multiplier set to zero.
Field derivative(const Field& f);

// Spectral second derivative (Nyquist kept: multiplier is real and even).
Field second_derivative(const Field& f);

// Node average (1/N) sum f(x_j); spectrally accurate quadrature for int_S f.
double mean(const Field& f);

double sup_norm(const Field& f);

// sqrt of (1/N) sum f^2 = discrete L2 norm over the unit-length circle.
double l2_norm(const Field& f);

// (1/N) sum |f| = discrete L1 norm.
double l1_norm(const Field& f);

// Trigonometric interpolant of a grid field, for off-node evaluation.
class SpectralInterpolant {
  public:
    explicit SpectralInterpolant(const Field& f);
    double operator()(double x) const;

  private:
    int n_;
    std::vector<std::complex<double>> coeffs_;  // normalized by 1/n
};

// One-off trigonometric interpolation at x (wrapped mod 1).
double interpolate(const Field& f, double x);

// Zero all modes |k| > n/3 (2/3-rule dealiasing of quadratic products).
Field truncate_two_thirds(const Field& f);

double wrap_unit(double x);  // wrap into [0,1)

}  // namespace muhs
