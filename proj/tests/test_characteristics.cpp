#include "doctest.h"

#include <cmath>

#include "muhs/characteristics.hpp"
#include "test_util.hpp"

using namespace muhs;

TEST_CASE("equispaced seeds") {
    auto s = equispaced_seeds(4);
    REQUIRE(s.size() == 4);
    CHECK(s[0] == 0.0);
    CHECK(s[1] == doctest::Approx(0.25));
    CHECK(s[3] == doctest::Approx(0.75));
    CHECK_THROWS_AS(equispaced_seeds(0), std::invalid_argument);
}

TEST_CASE("sup_abs of nested rows") {
    CHECK(sup_abs({{1.0, -3.0}, {2.0}}) == 3.0);
    CHECK(sup_abs({}) == 0.0);
}

TEST_CASE("constant data: closed-form flow q = x + c(1-e^{-lt})/l, qx = 1") {
    SolverConfig c;
    c.lambda = 0.3;
    c.n_points = 64;
    c.t_end = 1.0;
    c.dt = 1e-3;
    c.snapshot_stride = 100;
    auto track = advect(c, cosine_data(0.7, 0.0, make_grid(64)), equispaced_seeds(8));
    REQUIRE(track.trajectory.status == RunStatus::completed);
    for (std::size_t r = 0; r < track.times.size(); ++r) {
        const double t = track.times[r];
        const double drift = 0.7 * (1.0 - std::exp(-0.3 * t)) / 0.3;
        for (std::size_t i = 0; i < track.seeds.size(); ++i) {
            CHECK(std::abs(track.q[r][i] - (track.seeds[i] + drift)) < 1e-10);
            CHECK(track.qx[r][i] == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(track.y_along[r][i] ==
                  doctest::Approx(0.7 * std::exp(-0.3 * t)).epsilon(1e-9));
        }
    }
    CHECK(sup_abs(conserved_density_residual(track, track.trajectory)) < 1e-10);
}

TEST_CASE("cosine run: positive qx, small conserved-density residual") {
    SolverConfig c;
    c.lambda = 0.5;
    c.n_points = 128;
    c.t_end = 0.5;
    c.dt = 1e-3;
    c.snapshot_stride = 50;
    auto track = advect(c, cosine_data(1.0, 0.02, make_grid(128)),
                        equispaced_seeds(16));
    REQUIRE(track.trajectory.status == RunStatus::completed);
    CHECK(track.times == track.trajectory.times);
    CHECK(track.q.size() == track.times.size());
    CHECK(track.y0_at_seeds.size() == 16);
    for (const auto& row : track.qx) {
        for (double v : row) CHECK(v > 0.0);
    }
    CHECK(sup_abs(conserved_density_residual(track, track.trajectory)) < 1e-6);
}

TEST_CASE("residual shrinks under refinement") {
    auto residual = [](int n, double dt) {
        SolverConfig c;
        c.lambda = 0.5;
        c.n_points = n;
        c.t_end = 0.25;
        c.dt = dt;
        c.snapshot_stride = 1000000;  // endpoints only
        auto track = advect(c, cosine_data(1.0, 0.05, make_grid(n)),
                            equispaced_seeds(8));
        return sup_abs(conserved_density_residual(track, track.trajectory));
    };
    const double coarse = residual(64, 2e-3);
    const double fine = residual(128, 1e-3);
    CHECK(fine < coarse);
}

TEST_CASE("residual rejects mismatched sampling") {
    SolverConfig c;
    c.lambda = 0.1;
    c.n_points = 64;
    c.t_end = 0.1;
    c.dt = 1e-3;
    auto ic = cosine_data(0.5, 0.01, make_grid(64));
    auto track = advect(c, ic, equispaced_seeds(4));
    SolverConfig other = c;
    other.snapshot_stride = 3;
    Trajectory mismatched = simulate(other, ic);
    CHECK_THROWS_AS(conserved_density_residual(track, mismatched),
                    std::invalid_argument);
}

TEST_CASE("advect rejects out-of-range seeds") {
    SolverConfig c;
    c.n_points = 64;
    c.dt = 1e-3;
    c.t_end = 0.01;
    auto ic = cosine_data(0.5, 0.0, make_grid(64));
    CHECK_THROWS_AS(advect(c, ic, {1.5}), std::invalid_argument);
    CHECK_THROWS_AS(advect(c, ic, {-0.1}), std::invalid_argument);
}
