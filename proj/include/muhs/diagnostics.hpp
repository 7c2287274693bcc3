#pragma once

#include <string>
#include <vector>

#include "muhs/evolution.hpp"

namespace muhs {

// Per-time scalar observables bounded by the decay/BV estimates.
struct DiagnosticsRecord {
    double t = 0.0;
    double mean_u = 0.0;
    double grad_l2_sq = 0.0;  // ||u_x||^2_{L2}
    double sup_u = 0.0;
    double sup_ux = 0.0;
    double l1_u = 0.0;
    double l1_y = 0.0;
    double tv_ux = 0.0;  // cyclic sum of |u_x| increments
    double min_y = 0.0;
    double max_y = 0.0;
};

DiagnosticsRecord record(double t, const Field& u);
std::vector<DiagnosticsRecord> record_all(const Trajectory& traj);

struct LawCheck {
    std::string name;
    bool checked = true;  // false when the hypothesis is unmet (mixed sign)
    bool pass = true;
    double max_defect = 0.0;
    double tol = 0.0;
};

struct DecayReport {
    std::vector<LawCheck> laws;
    bool all_pass = true;

    const LawCheck* find(const std::string& name) const;
};

// Checks the mean law, gradient-energy law, sup bounds, sign preservation,
// L1 identities (sign-definite runs only) and the TV bound.
DecayReport verify_decay(const std::vector<DiagnosticsRecord>& records, double mu0,
                         double mu1, double lambda, SignClass sign_class,
                         double tol, double tv_tol = 1e-3);

// f_n(t) = int (phi_n * u_x)^2 together with its source term and the defect
// of the exponential-integral energy identity.
struct EnergyBalanceRecord {
    int n = 0;
    std::vector<double> times;
    std::vector<double> f_n;
    std::vector<double> g_n;
    std::vector<double> residual;
};

EnergyBalanceRecord energy_balance(const Trajectory& trajectory, int n);

}  // namespace muhs
