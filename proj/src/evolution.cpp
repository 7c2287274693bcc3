#include "muhs/evolution.hpp"

#include <cmath>

#include "muhs/mu_operator.hpp"

namespace muhs {

void SolverConfig::validate() const {
    if (lambda < 0) throw std::invalid_argument("config: lambda must be >= 0");
    if (n_points < 8 || n_points % 2 != 0) {
        throw std::invalid_argument("config: n_points must be even and >= 8");
    }
    if (t_end <= 0) throw std::invalid_argument("config: t_end must be > 0");
    if (dt.has_value() == cfl_safety.has_value()) {
        throw std::invalid_argument("config: exactly one of dt / cfl_safety");
    }
    if (dt && *dt <= 0) throw std::invalid_argument("config: dt must be > 0");
    if (cfl_safety && (*cfl_safety <= 0 || *cfl_safety > 1)) {
        throw std::invalid_argument("config: cfl_safety must be in (0,1]");
    }
    if (dt && t_end / *dt > 5e7) {
        throw std::invalid_argument("config: t_end/dt exceeds the step budget");
    }
    if (snapshot_stride < 1) {
        throw std::invalid_argument("config: snapshot_stride must be >= 1");
    }
    if (mollify_n && *mollify_n < 3) {
        throw std::invalid_argument("config: mollify_n must be >= 3");
    }
}

Field rhs(double t, const Field& u, double mu0, double lambda, bool dealias) {
    const int n = u.size();
    const Field ux = derivative(u);

    Field advection{u.grid, std::vector<double>(n)};
    Field flux{u.grid, std::vector<double>(n)};
    const double mu_t = 2.0 * mu0 * std::exp(-lambda * t);
    for (int j = 0; j < n; ++j) {
        advection.values[j] = u.values[j] * ux.values[j];
        flux.values[j] = 0.5 * ux.values[j] * ux.values[j];
    }
    if (dealias) {
        advection = truncate_two_thirds(advection);
        flux = truncate_two_thirds(flux);
    }
    // The mean-mode term mu_t * u passes through dx A^{-1} linearly; only
    // the quadratic u_x^2 needs dealiasing.
    for (int j = 0; j < n; ++j) flux.values[j] += mu_t * u.values[j];

    Field nonlocal = dx_Ainv(flux);
    Field out{u.grid, std::vector<double>(n)};
    for (int j = 0; j < n; ++j) {
        out.values[j] =
            -advection.values[j] - nonlocal.values[j] - lambda * u.values[j];
    }
    return out;
}

SolverState step_rk4(const SolverState& state, double dt, double lambda,
                     bool dealias, double guard, Rk4Stages* stages) {
    const int n = state.u.size();
    const double t = state.t;

    const Field& u1 = state.u;
    const Field k1 = rhs(t, u1, state.mu0, lambda, dealias);

    Field u2{state.u.grid, std::vector<double>(n)};
    for (int j = 0; j < n; ++j) u2.values[j] = u1.values[j] + 0.5 * dt * k1.values[j];
    const Field k2 = rhs(t + 0.5 * dt, u2, state.mu0, lambda, dealias);

    Field u3{state.u.grid, std::vector<double>(n)};
    for (int j = 0; j < n; ++j) u3.values[j] = u1.values[j] + 0.5 * dt * k2.values[j];
    const Field k3 = rhs(t + 0.5 * dt, u3, state.mu0, lambda, dealias);

    Field u4{state.u.grid, std::vector<double>(n)};
    for (int j = 0; j < n; ++j) u4.values[j] = u1.values[j] + dt * k3.values[j];
    const Field k4 = rhs(t + dt, u4, state.mu0, lambda, dealias);

    SolverState next;
    next.t = t + dt;
    next.mu0 = state.mu0;
    next.mu1 = state.mu1;
    next.u = Field{state.u.grid, std::vector<double>(n)};
    for (int j = 0; j < n; ++j) {
        next.u.values[j] = u1.values[j] + dt / 6.0 *
            (k1.values[j] + 2.0 * k2.values[j] + 2.0 * k3.values[j] + k4.values[j]);
    }

    if (stages) {
        stages->t = t;
        stages->dt = dt;
        stages->stage_t = {t, t + 0.5 * dt, t + 0.5 * dt, t + dt};
        stages->stage_u = {u1, std::move(u2), std::move(u3), std::move(u4)};
    }

    const double sup_ux = sup_norm(derivative(next.u));
    if (!(sup_ux <= guard)) throw BlowupError(next.t, sup_ux);
    return next;
}

Field prepare_initial_field(const SolverConfig& config, const InitialCondition& ic) {
    GridPtr grid = ic.u0.grid;
    if (grid->n_points != config.n_points) {
        throw std::invalid_argument("simulate: initial data grid does not match config");
    }
    if (ic.y0_atoms) {
        if (!config.mollify_n) {
            throw std::invalid_argument(
                "simulate: measure-type initial data requires mollify_n");
        }
        // u0^n = A^{-1}(phi_n * y0): keeps y0^n >= 0 exactly at the nodes.
        return invert_A_spectral(mollify_measure(*ic.y0_atoms, *config.mollify_n, grid));
    }
    if (config.mollify_n) return mollify_field(ic.u0, *config.mollify_n);
    return ic.u0;
}

Trajectory simulate(const SolverConfig& config, const InitialCondition& ic,
                    StepObserver* observer) {
    config.validate();

    SolverState state;
    state.t = 0.0;
    state.u = prepare_initial_field(config, ic);
    state.mu0 = mean(state.u);
    state.mu1 = l2_norm(derivative(state.u));

    const double guard = config.blowup_guard > 0
        ? config.blowup_guard
        : 1e3 * (std::abs(state.mu0) + state.mu1 + 1.0);

    Trajectory traj;
    traj.config = config;
    traj.sign_class = ic.sign_class;
    traj.mu0 = state.mu0;
    traj.mu1 = state.mu1;

    auto sample = [&](long step_idx, double t, const Field& u) {
        traj.times.push_back(t);
        traj.snapshot_steps.push_back(step_idx);
        traj.snapshots.push_back(u);
        if (observer) observer->on_sample(t, u);
    };
    sample(0, 0.0, state.u);

    const double eps = 1e-12;
    const double dx = 1.0 / config.n_points;
    long step = 0;
    Rk4Stages stages;
    while (state.t < config.t_end - 1e-12 * config.t_end) {
        double h;
        if (config.dt) {
            h = std::min(*config.dt, config.t_end - step * *config.dt);
        } else {
            h = *config.cfl_safety * dx / (sup_norm(state.u) + eps);
            h = std::min(h, config.t_end - state.t);
        }
        try {
            state = step_rk4(state, h, config.lambda, config.dealias, guard,
                             observer ? &stages : nullptr);
        } catch (const BlowupError& e) {
            traj.status = RunStatus::blowup_guard_triggered;
            traj.guard_time = e.t;
            return traj;
        }
        if (config.dt) state.t = std::min((step + 1) * *config.dt, config.t_end);
        if (observer) observer->on_stages(stages);
        ++step;
        const bool last = state.t >= config.t_end - 1e-12 * config.t_end;
        if (step % config.snapshot_stride == 0 || last) sample(step, state.t, state.u);
    }
    traj.status = RunStatus::completed;
    return traj;
}

}  // namespace muhs
