#include "doctest.h"

#include <cmath>

#include "muhs/evolution.hpp"
#include "muhs/mollifier.hpp"
#include "muhs/mu_operator.hpp"
#include "test_util.hpp"

using namespace muhs;
using muhs::test::pi;

TEST_CASE("config validation") {
    SolverConfig c;
    c.dt = 1e-3;
    CHECK_NOTHROW(c.validate());

    auto bad = [&](auto&& mutate) {
        SolverConfig b = c;
        mutate(b);
        CHECK_THROWS_AS(b.validate(), std::invalid_argument);
    };
    bad([](SolverConfig& b) { b.lambda = -0.1; });
    bad([](SolverConfig& b) { b.n_points = 255; });
    bad([](SolverConfig& b) { b.n_points = 4; });
    bad([](SolverConfig& b) { b.t_end = 0.0; });
    bad([](SolverConfig& b) { b.dt.reset(); });
    bad([](SolverConfig& b) { b.cfl_safety = 0.5; });  // both set
    bad([](SolverConfig& b) { b.dt = -1e-3; });
    bad([](SolverConfig& b) { b.snapshot_stride = 0; });
    bad([](SolverConfig& b) { b.mollify_n = 2; });
    bad([](SolverConfig& b) {
        b.dt.reset();
        b.cfl_safety = 1.5;
    });
}

TEST_CASE("rhs matches the closed form on a + b cos(2 pi x)") {
    auto g = make_grid(256);
    const double a = 0.8, b = 0.05, lambda = 0.4, t = 0.3;
    Field u = make_field(g);
    for (int j = 0; j < 256; ++j) {
        u.values[j] = a + b * std::cos(2 * pi * g->nodes[j]);
    }
    const Field r = rhs(t, u, a, lambda, true);

    // Worked out by hand from the nonlocal form: modes 1 and 2 only.
    const double e = std::exp(-lambda * t);
    Field expect = make_field(g);
    for (int j = 0; j < 256; ++j) {
        const double x = g->nodes[j];
        expect.values[j] = (2 * pi * a * b + a * e * b / pi) * std::sin(2 * pi * x) +
                           (pi * b * b - pi * b * b / 4) * std::sin(4 * pi * x) -
                           lambda * (a + b * std::cos(2 * pi * x));
    }
    CHECK(test::sup_diff(r, expect) < 1e-11);
    // low modes are untouched by dealiasing
    CHECK(test::sup_diff(rhs(t, u, a, lambda, false), expect) < 1e-11);
}

TEST_CASE("mean of rhs equals -lambda mean(u) exactly in exact arithmetic") {
    auto g = make_grid(128);
    std::mt19937 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        Field u = test::random_trig_poly(g, 30, rng);
        const double m = mean(u);
        for (double lambda : {0.0, 0.7}) {
            const Field r = rhs(0.2, u, m, lambda, true);
            CHECK(std::abs(mean(r) + lambda * m) < 1e-11);
        }
    }
}

TEST_CASE("constant data decays exponentially in closed form") {
    SolverConfig c;
    c.lambda = 0.3;
    c.n_points = 64;
    c.t_end = 2.0;
    c.dt = 1e-3;
    auto ic = cosine_data(0.7, 0.0, make_grid(64));
    Trajectory traj = simulate(c, ic);
    REQUIRE(traj.status == RunStatus::completed);
    CHECK(traj.times.back() == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double expect = 0.7 * std::exp(-0.3 * traj.times[i]);
        for (double v : traj.snapshots[i].values) {
            CHECK(std::abs(v - expect) < 1e-10);
        }
    }
}

TEST_CASE("mean obeys the exact decay law along a nonlinear run") {
    SolverConfig c;
    c.lambda = 0.5;
    c.n_points = 128;
    c.t_end = 1.0;
    c.dt = 2e-3;
    auto ic = cosine_data(1.0, 0.02, make_grid(128));
    Trajectory traj = simulate(c, ic);
    REQUIRE(traj.status == RunStatus::completed);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        CHECK(std::abs(mean(traj.snapshots[i]) -
                       traj.mu0 * std::exp(-0.5 * traj.times[i])) < 1e-12);
    }
}

TEST_CASE("lambda = 0 conserves mean and gradient energy") {
    SolverConfig c;
    c.lambda = 0.0;
    c.n_points = 128;
    c.t_end = 0.5;
    c.dt = 1e-3;
    auto ic = cosine_data(1.0, 0.02, make_grid(128));
    Trajectory traj = simulate(c, ic);
    REQUIRE(traj.status == RunStatus::completed);
    const double e0 = l2_norm(derivative(traj.snapshots.front()));
    for (const Field& u : traj.snapshots) {
        CHECK(std::abs(mean(u) - traj.mu0) < 1e-12);
        CHECK(std::abs(l2_norm(derivative(u)) - e0) < 1e-8 * (1.0 + e0));
    }
}

TEST_CASE("RK4 converges at fourth order in time") {
    // N = 64 keeps the largest advective eigenvalue inside the RK4 stability
    // region at the coarsest step.
    auto run = [](double dt) {
        SolverConfig c;
        c.lambda = 0.2;
        c.n_points = 64;
        c.t_end = 0.25;
        c.dt = dt;
        return simulate(c, cosine_data(1.0, 0.05, make_grid(64))).snapshots.back();
    };
    const Field ref = run(1.0 / 4096);
    const double e1 = test::sup_diff(run(1.0 / 128), ref);
    const double e2 = test::sup_diff(run(1.0 / 256), ref);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("snapshot bookkeeping respects the stride and endpoints") {
    SolverConfig c;
    c.lambda = 0.1;
    c.n_points = 64;
    c.t_end = 0.1;
    c.dt = 1e-3;  // 100 steps
    c.snapshot_stride = 7;
    Trajectory traj = simulate(c, cosine_data(0.5, 0.01, make_grid(64)));
    REQUIRE(traj.status == RunStatus::completed);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.snapshot_steps.front() == 0);
    CHECK(traj.times.back() == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(traj.snapshot_steps.back() == 100);
    // 0, 7, 14, ..., 98, 100
    CHECK(traj.times.size() == 16);
    CHECK(traj.snapshot_steps[1] == 7);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        CHECK(traj.times[i] ==
              doctest::Approx(traj.snapshot_steps[i] * 1e-3).epsilon(1e-14));
        CHECK(traj.snapshots[i].size() == 64);
    }
}

TEST_CASE("cfl-driven stepping reaches t_end") {
    SolverConfig c;
    c.lambda = 0.1;
    c.n_points = 64;
    c.t_end = 0.2;
    c.cfl_safety = 0.5;
    Trajectory traj = simulate(c, cosine_data(1.0, 0.02, make_grid(64)));
    REQUIRE(traj.status == RunStatus::completed);
    CHECK(traj.times.back() == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("blow-up guard trips and is reported") {
    SolverConfig c;
    c.lambda = 0.0;
    c.n_points = 64;
    c.t_end = 1.0;
    c.dt = 1e-3;
    c.blowup_guard = 1e-6;  // absurdly tight: trips on the first step
    Trajectory traj = simulate(c, cosine_data(1.0, 0.3, make_grid(64)));
    CHECK(traj.status == RunStatus::blowup_guard_triggered);
    CHECK(traj.guard_time > 0.0);
    CHECK(traj.guard_time <= 2e-3);

    SolverState s;
    s.u = cosine_data(1.0, 0.3, make_grid(64)).u0;
    s.mu0 = 1.0;
    CHECK_THROWS_AS(step_rk4(s, 1e-3, 0.0, true, 1e-9), BlowupError);
}

TEST_CASE("prepare_initial_field routes measure data through the mollifier") {
    auto g = make_grid(512);
    SolverConfig c;
    c.n_points = 512;
    c.dt = 1e-3;
    c.mollify_n = 16;

    auto pk = peakon_data(1.0, 0.5, g);
    const Field u0n = prepare_initial_field(c, pk);
    const Field y0n = apply_A(u0n);
    for (double v : y0n.values) CHECK(v >= -1e-9);
    CHECK(mean(y0n) == doctest::Approx(1.0).epsilon(1e-10));

    // measure data without mollify_n is rejected
    SolverConfig bare = c;
    bare.mollify_n.reset();
    CHECK_THROWS_AS(prepare_initial_field(bare, pk), std::invalid_argument);

    // smooth data: mollify_n applies mollify_field
    auto cs = cosine_data(1.0, 0.1, g);
    CHECK(test::sup_diff(prepare_initial_field(c, cs), mollify_field(cs.u0, 16)) <
          1e-14);
    CHECK(test::sup_diff(prepare_initial_field(bare, cs), cs.u0) == 0.0);

    // grid mismatch is rejected
    SolverConfig other = c;
    other.n_points = 256;
    CHECK_THROWS_AS(prepare_initial_field(other, cs), std::invalid_argument);
}

TEST_CASE("observer sees every snapshot and every step's stages") {
    struct Counter : StepObserver {
        int stages = 0, samples = 0;
        double last_t = -1.0;
        void on_stages(const Rk4Stages& s) override {
            ++stages;
            CHECK(s.stage_t[3] == doctest::Approx(s.t + s.dt));
        }
        void on_sample(double t, const Field&) override {
            ++samples;
            CHECK(t > last_t);
            last_t = t;
        }
    } obs;
    SolverConfig c;
    c.lambda = 0.1;
    c.n_points = 64;
    c.t_end = 0.05;
    c.dt = 1e-3;
    c.snapshot_stride = 10;
    simulate(c, cosine_data(0.5, 0.01, make_grid(64)), &obs);
    CHECK(obs.stages == 50);
    CHECK(obs.samples == 6);  // steps 0, 10, 20, 30, 40, 50
}

TEST_CASE("dealiased and plain runs agree on well-resolved data") {
    Field last[2];
    int i = 0;
    for (bool dealias : {true, false}) {
        SolverConfig c;
        c.lambda = 0.3;
        c.n_points = 256;
        c.t_end = 0.5;
        c.dt = 1e-3;
        c.dealias = dealias;
        last[i++] = simulate(c, cosine_data(1.0, 0.02, make_grid(256))).snapshots.back();
    }
    CHECK(test::sup_diff(last[0], last[1]) < 1e-10);
}
