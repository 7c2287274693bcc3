#pragma once

#include <vector>

#include "muhs/evolution.hpp"

namespace muhs {

// Characteristic flow q_t = u(t,q) sampled at the trajectory snapshot
// times; qx carries the exponential formula exp(int_0^t u_x(s,q(s))ds).
struct CharacteristicsTrack {
    std::vector<double> seeds;
    std::vector<double> times;
    // Row per recorded time, column per seed.
    std::vector<std::vector<double>> q;
    std::vector<std::vector<double>> qx;
    std::vector<std::vector<double>> y_along;  // y(t, q(t,x)) spectrally interpolated
    std::vector<double> y0_at_seeds;
    Trajectory trajectory;  // the co-integrated PDE run
};

std::vector<double> equispaced_seeds(int count);

// Integrates the flow with the same RK4 stage fields as the PDE.
CharacteristicsTrack advect(const SolverConfig& config, const InitialCondition& ic,
                            const std::vector<double>& seeds);

// r(t,x) = y(t,q(t,x)) qx^2 - y0(x) e^{-lambda t}, row per time.
std::vector<std::vector<double>> conserved_density_residual(
    const CharacteristicsTrack& track, const Trajectory& trajectory);

double sup_abs(const std::vector<std::vector<double>>& rows);

}  // namespace muhs
