#include "doctest.h"

#include <cmath>

#include "muhs/grid.hpp"
#include "test_util.hpp"

using namespace muhs;
using muhs::test::pi;

TEST_CASE("make_grid produces uniform nodes") {
    auto g = make_grid(8);
    CHECK(g->n_points == 8);
    CHECK(g->spacing == doctest::Approx(0.125));
    for (int j = 0; j < 8; ++j) CHECK(g->nodes[j] == doctest::Approx(j * 0.125));

    CHECK(make_grid(256)->spacing == doctest::Approx(1.0 / 256));
}

TEST_CASE("make_grid rejects odd or too-small sizes") {
    CHECK_THROWS_AS(make_grid(7), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(6), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(255), std::invalid_argument);
}

TEST_CASE("spectral derivative is exact on resolved modes") {
    auto g = make_grid(64);
    Field f = make_field(g), expect = make_field(g);
    for (int j = 0; j < 64; ++j) {
        f.values[j] = std::cos(2 * pi * g->nodes[j]);
        expect.values[j] = -2 * pi * std::sin(2 * pi * g->nodes[j]);
    }
    CHECK(test::sup_diff(derivative(f), expect) < 1e-12);

    for (int j = 0; j < 64; ++j) {
        f.values[j] = std::sin(4 * pi * g->nodes[j]);
        expect.values[j] = 4 * pi * std::cos(4 * pi * g->nodes[j]);
    }
    CHECK(test::sup_diff(derivative(f), expect) < 1e-11);
}

TEST_CASE("derivative of a constant vanishes") {
    auto g = make_grid(32);
    Field f = make_field(g, 5.0);
    CHECK(sup_norm(derivative(f)) < 1e-14);
}

TEST_CASE("mean: constants, zero-mean modes, and the Green node sum") {
    auto g = make_grid(64);
    CHECK(mean(make_field(g, 3.25)) == doctest::Approx(3.25));

    Field c = make_field(g);
    for (int j = 0; j < 64; ++j) c.values[j] = std::cos(2 * pi * g->nodes[j]);
    CHECK(std::abs(mean(c)) < 1e-15);

    // Node sum of g(x) = x(x-1)/2 + 13/12 has the closed form 1 + 1/(12 N^2).
    for (int n : {64, 256, 1024}) {
        auto grid = make_grid(n);
        Field gk = make_field(grid);
        for (int j = 0; j < n; ++j) {
            const double x = grid->nodes[j];
            gk.values[j] = 0.5 * x * (x - 1.0) + 13.0 / 12.0;
        }
        CHECK(mean(gk) ==
              doctest::Approx(1.0 + 1.0 / (12.0 * n * n)).epsilon(1e-13));
    }
}

TEST_CASE("mean of derivative vanishes for arbitrary fields") {
    auto g = make_grid(128);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        Field f = test::random_trig_poly(g, 50, rng);
        CHECK(std::abs(mean(derivative(f))) < 1e-13);
    }
}

TEST_CASE("interpolation: resolved modes, nodes, constants") {
    auto g = make_grid(64);
    Field f = make_field(g);
    for (int j = 0; j < 64; ++j) f.values[j] = std::cos(2 * pi * g->nodes[j]);
    CHECK(interpolate(f, 0.3) == doctest::Approx(std::cos(0.6 * pi)).epsilon(1e-12));

    std::mt19937 rng(11);
    Field r = test::random_trig_poly(g, 31, rng);
    SpectralInterpolant interp(r);
    for (int j = 0; j < 64; ++j) {
        CHECK(std::abs(interp(g->nodes[j]) - r.values[j]) < 1e-12);
    }

    CHECK(interpolate(make_field(g, 2.5), 0.123) == doctest::Approx(2.5));
}

TEST_CASE("interpolation wraps its argument mod 1") {
    auto g = make_grid(32);
    std::mt19937 rng(3);
    Field f = test::random_trig_poly(g, 10, rng);
    CHECK(interpolate(f, 0.37) == doctest::Approx(interpolate(f, 1.37)));
    CHECK(interpolate(f, 0.37) == doctest::Approx(interpolate(f, -0.63)));
}

TEST_CASE("quadrature is spectrally accurate for resolved trig polynomials") {
    auto g = make_grid(64);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        // int_0^1 f = a0 exactly; every nonconstant resolved mode integrates
        // to zero, so the node mean must reproduce a0.
        const double a0 = amp(rng);
        Field f = make_field(g, a0);
        for (int k = 1; k < 32; ++k) {
            const double a = amp(rng), b = amp(rng);
            for (int j = 0; j < 64; ++j) {
                const double ph = 2 * pi * k * g->nodes[j];
                f.values[j] += a * std::cos(ph) + b * std::sin(ph);
            }
        }
        CHECK(std::abs(mean(f) - a0) < 1e-12);
    }
}

TEST_CASE("check_field rejects NaN and size mismatch") {
    auto g = make_grid(16);
    Field f = make_field(g, 1.0);
    f.values[3] = std::nan("");
    CHECK_THROWS_AS(check_field(f), std::invalid_argument);
    Field short_f{g, std::vector<double>(8, 0.0)};
    CHECK_THROWS_AS(check_field(short_f), std::invalid_argument);
}
