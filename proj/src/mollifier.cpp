#include "muhs/mollifier.hpp"

#include <cmath>
#include <stdexcept>

#include "muhs/fft.hpp"

namespace muhs {

double AtomicMeasure::total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass;
    return s;
}

AtomicMeasure AtomicMeasure::from_atoms(std::vector<Atom> atoms) {
    AtomicMeasure m;
    m.atoms = std::move(atoms);
    bool has_pos = false, has_neg = false;
    for (const auto& a : m.atoms) {
        if (a.mass > 0) has_pos = true;
        if (a.mass < 0) has_neg = true;
    }
    if (has_pos && has_neg) {
        m.sign = SignClass::mixed;
    } else if (has_neg) {
        m.sign = SignClass::y_nonpos;
    } else {
        m.sign = SignClass::y_nonneg;
    }
    return m;
}

double bump(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(1.0 / (x * x - 1.0));
}

double normalization_constant() {
    static const double value = [] {
        // Composite trapezoid with doubling; the bump is flat to all orders
        // at the endpoints, so convergence is faster than any power of h.
        int m = 64;
        double prev = 0.0;
        double cur = 0.0;
        for (int iter = 0; iter < 18; ++iter) {
            const double h = 2.0 / m;
            double s = 0.0;
            for (int j = 1; j < m; ++j) s += bump(-1.0 + j * h);
            cur = h * s;
            if (iter > 2 && std::abs(cur - prev) <= 1e-14 * std::abs(cur)) break;
            prev = cur;
            m *= 2;
        }
        return 1.0 / cur;
    }();
    return value;
}

MollifierKernel::MollifierKernel(int n_) : n(n_) {
    if (n < 1) throw std::invalid_argument("mollifier: index must be positive");
    normalization = normalization_constant();
    support_radius = 1.0 / n;
}

double MollifierKernel::operator()(double x) const {
    return normalization * n * bump(n * x);
}

double MollifierKernel::periodic(double x) const {
    double d = x - std::round(x);  // wrapped to [-1/2, 1/2]
    return (*this)(d);
}

std::vector<double> mollifier_multipliers(int n, int n_points) {
    if (n < 3) throw std::invalid_argument("mollifier: need n >= 3 for periodization");
    const MollifierKernel kernel(n);
    const int m = std::max(16384, 8 * n_points);
    std::vector<double> samples(m);
    for (int j = 0; j < m; ++j) {
        samples[j] = kernel.periodic(static_cast<double>(j) / m);
    }
    auto spec = fft::forward(samples);
    std::vector<double> mult(n_points / 2 + 1);
    const double c0 = spec[0].real();
    for (int k = 0; k <= n_points / 2; ++k) {
        // The kernel is even, so the coefficients are real to roundoff.
        mult[k] = spec[k].real() / c0;
    }
    mult[0] = 1.0;
    return mult;
}

Field mollify_field(const Field& u0, int n) {
    if (n < 3) throw std::invalid_argument("mollify_field: need n >= 3");
    check_field(u0);
    const int np = u0.size();
    const auto mult = mollifier_multipliers(n, np);
    auto spec = fft::forward(u0.values);
    for (int k = 0; k <= np / 2; ++k) spec[k] *= mult[k];
    return Field{u0.grid, fft::inverse(spec, np)};
}

Field mollify_measure(const AtomicMeasure& y0, int n, GridPtr grid) {
    if (n < 3) throw std::invalid_argument("mollify_measure: need n >= 3");
    const MollifierKernel kernel(n);
    const int np = grid->n_points;
    Field out = make_field(grid);
    std::vector<double> samples(np);
    for (const auto& atom : y0.atoms) {
        double node_sum = 0.0;
        for (int j = 0; j < np; ++j) {
            samples[j] = kernel.periodic(grid->nodes[j] - atom.position);
            node_sum += samples[j];
        }
        const double disc_mass = node_sum / np;
        if (disc_mass <= 0.0) {
            throw std::invalid_argument(
                "mollify_measure: grid too coarse to resolve the kernel");
        }
        const double scale = atom.mass / disc_mass;
        for (int j = 0; j < np; ++j) out.values[j] += scale * samples[j];
    }
    return out;
}

}  // namespace muhs
