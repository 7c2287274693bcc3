#include "muhs/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "muhs/fft.hpp"

namespace muhs {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

GridPtr make_grid(int n_points) {
    if (n_points < 8 || n_points % 2 != 0) {
        throw std::invalid_argument("make_grid: n_points must be even and >= 8");
    }
    auto g = std::make_shared<PeriodicGrid>();
    g->n_points = n_points;
    g->spacing = 1.0 / n_points;
    g->nodes.resize(n_points);
    for (int j = 0; j < n_points; ++j) g->nodes[j] = static_cast<double>(j) / n_points;
    return g;
}

Field make_field(GridPtr grid, double fill) {
    return Field{grid, std::vector<double>(grid->n_points, fill)};
}

void check_field(const Field& f) {
    if (!f.grid || f.size() != f.grid->n_points) {
        throw std::invalid_argument("field: value count does not match grid");
    }
    for (double v : f.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("field: non-finite value");
    }
}

double wrap_unit(double x) {
    double y = x - std::floor(x);
    if (y >= 1.0) y -= 1.0;  // guards x = -eps rounding to 1.0
    return y;
}

Field derivative(const Field& f) {
    const int n = f.size();
    auto spec = fft::forward(f.values);
    for (int k = 0; k <= n / 2; ++k) {
        if (k == n / 2) {
            spec[k] = 0.0;  // symmetric convention: drop the Nyquist mode
        } else {
            spec[k] *= std::complex<double>(0.0, two_pi * k);
        }
    }
    return Field{f.grid, fft::inverse(spec, n)};
}

Field second_derivative(const Field& f) {
    const int n = f.size();
    auto spec = fft::forward(f.values);
    for (int k = 0; k <= n / 2; ++k) {
        spec[k] *= -(two_pi * k) * (two_pi * k);
    }
    return Field{f.grid, fft::inverse(spec, n)};
}

double mean(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / f.size();
}

double sup_norm(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double l2_norm(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s / f.size());
}

double l1_norm(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += std::abs(v);
    return s / f.size();
}

SpectralInterpolant::SpectralInterpolant(const Field& f) : n_(f.size()) {
    coeffs_ = fft::forward(f.values);
    for (auto& c : coeffs_) c /= static_cast<double>(n_);
}

double SpectralInterpolant::operator()(double x) const {
    // c0 + 2 sum_{0<k<n/2} Re(c_k e^{2pi i k x}) + Re(c_{n/2}) cos(pi n x)
    double v = coeffs_[0].real();
    for (int k = 1; k < n_ / 2; ++k) {
        const double a = two_pi * k * x;
        v += 2.0 * (coeffs_[k].real() * std::cos(a) - coeffs_[k].imag() * std::sin(a));
    }
    v += coeffs_[n_ / 2].real() * std::cos(two_pi * (n_ / 2) * x);
    return v;
}

double interpolate(const Field& f, double x) {
    return SpectralInterpolant(f)(wrap_unit(x));
}

Field truncate_two_thirds(const Field& f) {
    const int n = f.size();
    const int kmax = n / 3;
    auto spec = fft::forward(f.values);
    for (int k = kmax + 1; k <= n / 2; ++k) spec[k] = 0.0;
    return Field{f.grid, fft::inverse(spec, n)};
}

}  // namespace muhs
