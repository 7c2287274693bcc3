#pragma once

#include <optional>

#include "muhs/grid.hpp"
#include "muhs/mollifier.hpp"

namespace muhs {

// Initial state u0 together with the cached invariants mu0 = mean(u0)
// and mu1 = ||u0_x||_{L2}, plus the sign class of y0 = A u0.
struct InitialCondition {
    Field u0;
    std::optional<AtomicMeasure> y0_atoms;
    SignClass sign_class = SignClass::mixed;
    double mu0 = 0.0;
    double mu1 = 0.0;
};

// u0 = a + b cos(2 pi x); y0 = a + 4 pi^2 b cos(2 pi x).
InitialCondition cosine_data(double a, double b, GridPtr grid);

// u0 = p g(. - x0): peakon profile whose momentum is the point mass p at x0.
InitialCondition peakon_data(double p, double x0, GridPtr grid);

// Arbitrary node values (the "file" initial kind).
InitialCondition field_data(std::vector<double> values, GridPtr grid);

// Sign class of y0 = A u0 from its node values, up to tol.
SignClass classify_sign(const Field& u0, double tol);

const char* to_string(SignClass s);

}  // namespace muhs
