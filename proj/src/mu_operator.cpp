#include "muhs/mu_operator.hpp"

#include <cmath>
#include <numbers>

#include "muhs/fft.hpp"

namespace muhs {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Cumulative trapezoid of f over [0, x_j] with Euler-Maclaurin endpoint
// corrections (orders h^2 and h^4) from the first and third derivatives.
// All arrays carry n+1 entries over x_0..x_n with x_n = 1; plain trapezoid
// alone is only second-order, which is too coarse for the cross-route
// agreement this oracle must deliver on resolved modes.
std::vector<double> cumtrapz(const std::vector<double>& f,
                             const std::vector<double>& d1,
                             const std::vector<double>& d3, double h) {
    const int n = static_cast<int>(f.size()) - 1;
    std::vector<double> out(n + 1);
    out[0] = 0.0;
    for (int j = 1; j <= n; ++j) out[j] = out[j - 1] + 0.5 * h * (f[j - 1] + f[j]);
    const double c2 = h * h / 12.0;
    const double c4 = h * h * h * h / 720.0;
    for (int j = 1; j <= n; ++j) {
        out[j] += -c2 * (d1[j] - d1[0]) + c4 * (d3[j] - d3[0]);
    }
    return out;
}

// Appends the periodic wrap value f(1) = f(0).
std::vector<double> with_wrap(const std::vector<double>& f) {
    std::vector<double> out(f);
    out.push_back(f[0]);
    return out;
}

}  // namespace

double green_function(double x) {
    const double y = wrap_unit(x);
    return 0.5 * y * (y - 1.0) + 13.0 / 12.0;
}

Field green_kernel(GridPtr grid, double x0) {
    Field g = make_field(grid);
    for (int j = 0; j < grid->n_points; ++j) {
        g.values[j] = green_function(grid->nodes[j] - x0);
    }
    return g;
}

Field apply_A(const Field& w) {
    const int n = w.size();
    auto spec = fft::forward(w.values);
    for (int k = 1; k <= n / 2; ++k) spec[k] *= (two_pi * k) * (two_pi * k);
    // k = 0 carries n * mean(w); A fixes the mean mode.
    return Field{w.grid, fft::inverse(spec, n)};
}

Field invert_A_spectral(const Field& w) {
    const int n = w.size();
    auto spec = fft::forward(w.values);
    for (int k = 1; k <= n / 2; ++k) spec[k] /= (two_pi * k) * (two_pi * k);
    return Field{w.grid, fft::inverse(spec, n)};
}

Field invert_A_explicit(const Field& w) {
    const int n = w.size();
    const double h = w.grid->spacing;
    const auto we = with_wrap(w.values);
    const auto wd1 = with_wrap(derivative(w).values);
    const auto wd2 = with_wrap(second_derivative(w).values);
    const auto wd3 = with_wrap(derivative(second_derivative(w)).values);
    // Nested antiderivatives: each level's correction uses the derivatives
    // of its own integrand (W1' = w, W2' = W1, ...).
    const auto w1 = cumtrapz(we, wd1, wd3, h);
    const auto w2 = cumtrapz(w1, we, wd2, h);
    const auto w3 = cumtrapz(w2, w1, wd1, h);
    const double mu_w = w1[n];
    Field v = make_field(w.grid);
    for (int j = 0; j < n; ++j) {
        const double x = w.grid->nodes[j];
        v.values[j] = (0.5 * x * x - 0.5 * x + 13.0 / 12.0) * mu_w +
                      (x - 0.5) * w2[n] - w2[j] + w3[n];
    }
    return v;
}

Field convolve_green(const Field& w) {
    const int n = w.size();
    const Field g = green_kernel(w.grid);
    auto gs = fft::forward(g.values);
    auto ws = fft::forward(w.values);
    // Circular convolution with the quadrature weight 1/N.
    for (int k = 0; k <= n / 2; ++k) ws[k] *= gs[k] / static_cast<double>(n);
    Field v{w.grid, fft::inverse(ws, n)};
    // The integrand w(x') g(x - x') has a derivative kink (jump -w(x)) at
    // x' = x, which sits on a node; correct its Euler-Maclaurin terms so
    // the node-sampled kernel matches the other routes on resolved modes.
    const double h = w.grid->spacing;
    const Field wxx = second_derivative(w);
    const double c2 = h * h / 12.0;
    const double c4 = h * h * h * h / 240.0;
    for (int j = 0; j < n; ++j) {
        v.values[j] += -c2 * w.values[j] + c4 * wxx.values[j];
    }
    return v;
}

Field dx_Ainv(const Field& w) {
    const int n = w.size();
    auto spec = fft::forward(w.values);
    spec[0] = 0.0;
    for (int k = 1; k <= n / 2; ++k) {
        if (k == n / 2) {
            spec[k] = 0.0;  // odd derivative: Nyquist dropped
        } else {
            spec[k] *= std::complex<double>(0.0, 1.0 / (two_pi * k));
        }
    }
    return Field{w.grid, fft::inverse(spec, n)};
}

Field dx_Ainv_explicit(const Field& w) {
    const int n = w.size();
    const double h = w.grid->spacing;
    const auto we = with_wrap(w.values);
    const auto wd1 = with_wrap(derivative(w).values);
    const auto wd2 = with_wrap(second_derivative(w).values);
    const auto wd3 = with_wrap(derivative(second_derivative(w)).values);
    const auto w1 = cumtrapz(we, wd1, wd3, h);
    const auto w2 = cumtrapz(w1, we, wd2, h);
    Field v = make_field(w.grid);
    for (int j = 0; j < n; ++j) {
        const double x = w.grid->nodes[j];
        v.values[j] = (x - 0.5) * w1[n] - w1[j] + w2[n];
    }
    return v;
}

double check_inversion_identity(const Field& w) {
    const Field lhs = invert_A_spectral(second_derivative(w));
    const double mu_w = mean(w);
    double res = 0.0;
    for (int j = 0; j < w.size(); ++j) {
        res = std::max(res, std::abs(lhs.values[j] - (-w.values[j] + mu_w)));
    }
    return res;
}

}  // namespace muhs
