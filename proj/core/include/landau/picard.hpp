#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "landau/coefficient_bounds.hpp"
#include "landau/grid.hpp"
#include "landau/solver.hpp"
#include "landau/weights.hpp"

namespace landau {

struct PicardParams {
    double M0 = 0.0;     // bound on ||g_ini||_Y
    double M_h = 0.0;    // iterate budget, 2 M0
    double C_emp = 1.0;  // measured stand-in for C(d0, gamma)
    double kappa = 0.0;  // C_emp M_h
    double T = 0.0;
    double T0 = 0.0;     // d0 / (2 kappa)
    double d0 = 1.0;
    // The radius lower bound overflows doubles for realistic data, so its log is kept as well.
    double R_min = 0.0;
    double log_R_min = 0.0;
    int norm_order = 2;  // derivative order of the Y and E norms
    int max_iters = 20;
    double contraction_tol = 1e-8;
    int time_steps = 16;
    int max_restarts = 3;

    void validate() const;
};

struct SelectOptions {
    double M0_bound = 0.0;  // used when larger than the measured norm
    int norm_order = 2;     // capped by the grid's resolvable order
    double epsilon = 1e-2;  // viscosity entering R_min
};

// M0 = max(||g_ini||_Y, bound), M_h = 2 M0, kappa = C_emp M_h, T = min(2 ln 2 / (C_emp M0), T0).
// Zero data takes M_h = 1 for kappa and T = T0.
PicardParams select_parameters(const Field& g_ini, double d0, const ModelParams& params, double C_emp,
                               const SelectOptions& opt = {});

// Safety factor times the largest measured coefficient-bound constant.
double empirical_constant(const BoundReport& report, double safety = 4.0);

struct ContractionNorm {
    double value = 0.0;
    int order = 0;
    bool fallback = false;  // order 4 was not resolvable on the grid
};

// E-tilde^4_T norm of a trajectory (base-10 hierarchy, derivatives up to order 4).
ContractionNorm contraction_norm(const std::vector<Field>& w, const ModelParams& params);

struct ContractionEntry {
    int iteration = 0;
    double w_norm = 0.0;  // ||g^n - g^{n-1}|| in E-tilde^4
    double ratio = 0.0;   // ||w^n|| / ||w^{n-1}||
    bool has_ratio = false;
    double g_norm = 0.0;  // ||g^n||_E on the cutoff domain
    bool budget_ok = true;
};

struct ContractionHistory {
    std::vector<ContractionEntry> entries;
    int norm_order = 4;
    bool norm_fallback = false;
    bool converged = false;
    int restarts = 0;
    double T = 0.0;  // horizon actually used, after restarts
};

struct PicardAbort : std::runtime_error {
    enum class Reason { Budget, Divergence, Negativity };
    PicardAbort(Reason r, const std::string& what, ContractionHistory h)
        : std::runtime_error(what), reason(r), history(std::move(h)) {}
    Reason reason;
    ContractionHistory history;
};

struct PicardResult {
    std::vector<Field> trajectory;  // final iterate g, one snapshot per time step
    ContractionHistory history;
    PicardParams params;  // as used, T possibly halved
    SolveStats last_solve;
};

// g^n solves the linearized problem with h = f^{n-1} = exp(-d(t)<v>) g^{n-1}. The solver settings
// come from `cfg`; kappa, d0, dt and the norm order are overridden from `params`.
PicardResult iterate(const Field& g_ini, const PicardParams& params, const SolverConfig& cfg);

struct ResidualReport {
    double absolute = 0.0;  // ( int ||<v>^10 r(t)||^2 dt )^{1/2}
    double relative = 0.0;  // divided by the same norm of dG/dt
    int samples = 0;
};

// r = central difference of g in time minus the operator with coefficients built from f = exp(-d<v>) g itself.
ResidualReport nonlinear_residual(const std::vector<Field>& trajectory, const SolverConfig& cfg);

struct ResidualOrder {
    ResidualReport coarse;
    ResidualReport fine;
    double order = 0.0;  // log2(coarse / fine)
};

// Converged residuals at params.time_steps and twice as many.
ResidualOrder residual_order(const Field& g_ini, const PicardParams& params, const SolverConfig& cfg);

struct PerturbationReport {
    double initial_distance = 0.0;  // Y-tilde^4 distance of the initial data
    double final_distance = 0.0;    // E-tilde^4 distance of the converged trajectories
    double ratio = 0.0;
};

// Two runs from g_ini and (1 + rel) g_ini; a diagnostic for uniqueness, not a proof.
PerturbationReport perturbation_diagnostic(const Field& g_ini, const PicardParams& params, const SolverConfig& cfg,
                                           double rel = 1e-3);

}  // namespace landau
