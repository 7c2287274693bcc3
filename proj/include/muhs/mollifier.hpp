#pragma once

#include <vector>

#include "muhs/grid.hpp"

namespace muhs {

enum class SignClass { y_nonneg, y_nonpos, mixed };

struct Atom {
    double position;  // in [0,1)
    double mass;
};

// Finite list of signed point masses on the circle (measure data y0).
struct AtomicMeasure {
    std::vector<Atom> atoms;
    SignClass sign = SignClass::mixed;

    double total_mass() const;
    static AtomicMeasure from_atoms(std::vector<Atom> atoms);
};

// The unnormalized bump e^{1/(x^2-1)} on (-1,1), zero outside.
double bump(double x);

// (int_R bump)^{-1}, computed once by quadrature (no closed form exists).
double normalization_constant();

// The Friedrichs family phi_n(x) = normalization * n * bump(n x),
// supported in (-1/n, 1/n).
struct MollifierKernel {
    int n;
    double normalization;
    double support_radius;

    explicit MollifierKernel(int n);
    double operator()(double x) const;  // not periodized
    // Kernel evaluated at the periodic distance x (wrapped to [-1/2,1/2)).
    double periodic(double x) const;
};

// Fourier multipliers of the periodized phi_n on an n_points grid,
// normalized so the k=0 entry is exactly 1 (mean preservation).
std::vector<double> mollifier_multipliers(int n, int n_points);

// phi_n * u0 computed in Fourier space. Requires n >= 3 so the kernel
// support fits in one period.
Field mollify_field(const Field& u0, int n);

// Sum of mass-weighted kernels centered at the atoms, sampled at the nodes.
// Each atom's samples are rescaled so its discrete mass is exact, keeping
// the field nonnegative for nonnegative masses.
Field mollify_measure(const AtomicMeasure& y0, int n, GridPtr grid);

}  // namespace muhs
