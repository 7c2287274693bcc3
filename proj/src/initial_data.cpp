#include "muhs/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "muhs/mu_operator.hpp"

namespace muhs {

namespace {

InitialCondition finish(Field u0, std::optional<AtomicMeasure> atoms) {
    check_field(u0);
    InitialCondition ic;
    ic.mu0 = mean(u0);
    ic.mu1 = l2_norm(derivative(u0));
    if (atoms) {
        ic.sign_class = atoms->sign;
    } else {
        ic.sign_class = classify_sign(u0, 1e-10);
    }
    ic.u0 = std::move(u0);
    ic.y0_atoms = std::move(atoms);
    return ic;
}

}  // namespace

InitialCondition cosine_data(double a, double b, GridPtr grid) {
    Field u0 = make_field(grid);
    for (int j = 0; j < grid->n_points; ++j) {
        u0.values[j] = a + b * std::cos(2.0 * std::numbers::pi * grid->nodes[j]);
    }
    return finish(std::move(u0), std::nullopt);
}

InitialCondition peakon_data(double p, double x0, GridPtr grid) {
    if (p == 0.0) throw std::invalid_argument("peakon_data: mass must be nonzero");
    Field u0 = green_kernel(grid, x0);
    for (double& v : u0.values) v *= p;
    auto atoms = AtomicMeasure::from_atoms({Atom{wrap_unit(x0), p}});
    return finish(std::move(u0), std::move(atoms));
}

InitialCondition field_data(std::vector<double> values, GridPtr grid) {
    Field u0{grid, std::move(values)};
    return finish(std::move(u0), std::nullopt);
}

SignClass classify_sign(const Field& u0, double tol) {
    if (tol <= 0) throw std::invalid_argument("classify_sign: tol must be positive");
    const Field y0 = apply_A(u0);
    const auto [lo, hi] = std::minmax_element(y0.values.begin(), y0.values.end());
    if (*lo >= -tol) return SignClass::y_nonneg;
    if (*hi <= tol) return SignClass::y_nonpos;
    return SignClass::mixed;
}

const char* to_string(SignClass s) {
    switch (s) {
        case SignClass::y_nonneg: return "y_nonneg";
        case SignClass::y_nonpos: return "y_nonpos";
        default: return "mixed";
    }
}

}  // namespace muhs
