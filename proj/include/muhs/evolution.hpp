#pragma once

#include <array>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "muhs/grid.hpp"
#include "muhs/initial_data.hpp"

namespace muhs {

struct SolverConfig {
    double lambda = 0.0;        // dissipation rate, >= 0
    int n_points = 256;
    double t_end = 1.0;
    std::optional<double> dt;
    std::optional<double> cfl_safety;
    bool dealias = true;
    int snapshot_stride = 10;
    double blowup_guard = 0.0;  // <= 0: auto 1e3 (|mu0| + mu1 + 1)
    std::optional<int> mollify_n;

    void validate() const;
};

struct SolverState {
    double t = 0.0;
    Field u;
    double mu0 = 0.0;  // cached at t = 0, immutable over a trajectory
    double mu1 = 0.0;
};

enum class RunStatus { completed, blowup_guard_triggered };

struct Trajectory {
    SolverConfig config;
    std::vector<double> times;
    std::vector<long> snapshot_steps;
    std::vector<Field> snapshots;
    RunStatus status = RunStatus::completed;
    double guard_time = -1.0;  // valid when the guard tripped
    SignClass sign_class = SignClass::mixed;
    double mu0 = 0.0;  // of the evolved (possibly mollified) initial data
    double mu1 = 0.0;
};

struct BlowupError : std::runtime_error {
    double t;
    BlowupError(double t_, double sup_ux)
        : std::runtime_error("blow-up guard triggered"), t(t_), sup(sup_ux) {}
    double sup;
};

// Right-hand side of the nonlocal working form:
// u_t = -u u_x - dx A^{-1}(2 mu0 e^{-lambda t} u + u_x^2 / 2) - lambda u.
Field rhs(double t, const Field& u, double mu0, double lambda, bool dealias = true);

// The four stage fields of one classical RK4 step (for co-integrating
// the characteristic flow with the same stages).
struct Rk4Stages {
    double t = 0.0;
    double dt = 0.0;
    std::array<double, 4> stage_t{};
    std::array<Field, 4> stage_u;
};

// One classical RK4 step; throws BlowupError if ||u_x||_inf exceeds guard
// after the step.
SolverState step_rk4(const SolverState& state, double dt, double lambda,
                     bool dealias = true,
                     double guard = std::numeric_limits<double>::infinity(),
                     Rk4Stages* stages = nullptr);

// Hooks into the time loop of simulate().
struct StepObserver {
    virtual ~StepObserver() = default;
    virtual void on_stages(const Rk4Stages&) {}
    // Called exactly when a snapshot is recorded (including t = 0).
    virtual void on_sample(double t, const Field& u) {}
};

// Effective initial field on the config grid: mollified for measure-type
// data (mandatory) and when mollify_n is set for smooth data.
Field prepare_initial_field(const SolverConfig& config, const InitialCondition& ic);

Trajectory simulate(const SolverConfig& config, const InitialCondition& ic,
                    StepObserver* observer = nullptr);

}  // namespace muhs
