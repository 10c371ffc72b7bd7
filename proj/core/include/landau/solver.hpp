#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "landau/coefficients.hpp"
#include "landau/exponential_weight.hpp"
#include "landau/grid.hpp"
#include "landau/norms.hpp"
#include "landau/term_ledger.hpp"
#include "landau/weights.hpp"

namespace landau {

enum class Scheme { Explicit, IMEX };

// Which factor multiplies v_i v_j / <v>^2 in the zeroth-order term:
// (d + 1/<v>) as in the equation for g, or (d + 1) as printed in the iteration display.
enum class ReactionVariant { BracketInverse, Unit };

struct SolverConfig {
    ModelParams params;
    ExponentialWeight weight;
    double epsilon = 1e-2;
    double R = 4.0;
    double dt = 0.0;  // 0 selects cfl_safety times the positivity bound
    Scheme scheme = Scheme::Explicit;
    int max_derivative_order = 2;
    double mollifier_epsilon = 0.0;  // 0 leaves h unmollified
    bool initial_cutoff = true;      // G(0) = chi_R (zeta_eps * g_ini)
    bool artificial_viscosity = true;  // only used where A is not positive definite
    ReactionVariant variant = ReactionVariant::BracketInverse;
    double cfl_safety = 0.4;
    int snapshot_every = 1;
    int ledger_every = 1;
    bool compute_ledger = true;
    double growth_cap = 1e8;
    Engine engine = Engine::FFT;

    void validate(const GridSpec& g) const;
};

struct SolverAbort : std::runtime_error {
    explicit SolverAbort(const std::string& what, TermLedger ledger = {})
        : std::runtime_error(what), ledger(std::move(ledger)) {}
    TermLedger ledger;
};

// Velocity points strictly inside |v| < R and off the outermost grid layer.
std::vector<char> interior_mask(const GridSpec& g, double R);

// The linearized viscous operator for fixed (possibly time dependent) input h,
// with coefficients recomputed per snapshot of h and linearly interpolated in t.
//
// The second-order term uses Selling's decomposition of A = abar + eps I into
// nonnegative weights on integer offsets, which keeps the scheme monotone without
// added viscosity. Points where A is not positive definite fall back to a 19-point
// split, raising negative axis weights to zero when artificial_viscosity is set.
class LinearizedOperator {
public:
    LinearizedOperator(const GridSpec& g, const SolverConfig& cfg, std::vector<Field> h_snapshots);
    ~LinearizedOperator();
    LinearizedOperator(LinearizedOperator&&) noexcept;
    LinearizedOperator& operator=(LinearizedOperator&&) noexcept;

    // dG/dt at interior points (zero outside the velocity ball).
    Field rhs(const Field& G, double t) const;
    // Largest dt keeping the update monotone at time t (no safety factor).
    double positivity_bound(double t) const;
    // cfl_safety times the smallest positivity bound over the snapshot times of h and [0, T].
    double stable_dt(double T) const;
    Field step(const Field& G, double t, double dt) const;

    CoefficientField coefficients_at(double t) const;
    const std::vector<char>& interior() const { return interior_; }
    // Zero Dirichlet data on |v| >= R; psi_0 is 1 inside and every psi_m, m > 0, vanishes there.
    double wall_radius() const { return cfg_.R; }
    const SolverConfig& config() const { return cfg_; }
    const GridSpec& grid() const { return grid_; }
    // Zeroes everything outside the interior.
    void apply_boundary(Field& G) const;

    struct StencilStats {
        std::size_t fallback_points = 0;  // points where A was not positive definite
        double max_added_viscosity = 0.0;
        int max_reach = 0;  // longest offset, in cells along one axis
    };
    // Accumulated over every coefficient state the operator has been evaluated at.
    StencilStats stencil_stats() const { return stats_; }

private:
    struct Prepared;
    struct Local;
    const Prepared& prepare(double t) const;
    Local local(const Prepared& P, std::size_t idx, double d) const;
    double rate_at(const Prepared& P, std::size_t idx, double d, bool imex) const;
    Field explicit_part(const Field& G, double t, bool imex) const;
    void implicit_solve(Field& G, double t, double dt) const;

    GridSpec grid_;
    SolverConfig cfg_;
    std::vector<double> times_;
    std::vector<CoefficientField> coeffs_;
    std::vector<char> interior_;
    VelocityTable vt_;
    mutable std::unique_ptr<Prepared> cache_;
    mutable StencilStats stats_;
};

// Convenience: right side for a static h.
Field rhs_linearized(const Field& G, const Field& h, const SolverConfig& cfg, double t);
Field step(const Field& G, const Field& h, const SolverConfig& cfg, double t, double dt);

// -d int tr(abar)/<v> G^2, the zeroth-order term with a good sign for h >= 0.
double damping_term(const Field& G, const CoefficientField& cf, double d);

struct GronwallFit {
    double C_envelope = 0.0;  // smallest C with Y(t)^2 <= Y(0)^2 exp(C t) at every snapshot
    double C_fit = 0.0;       // least-squares slope of ln(Y^2/Y(0)^2) through the origin
    bool holds = true;        // Y(T)^2 <= Y(0)^2 exp(C_fit T)
};
GronwallFit fit_gronwall(const std::vector<double>& t, const std::vector<double>& y);

struct SolveStats {
    int steps = 0;
    double dt = 0.0;
    double max_added_viscosity = 0.0;
    std::size_t stencil_fallback_points = 0;
    int max_stencil_reach = 0;
    double min_F_ratio = 0.0;  // min over steps of min(F)/max(F)
    bool positivity_ok = true;
};

struct SolveResult {
    std::vector<Field> trajectory;
    EnergyReport energy;
    TermLedger ledger;
    GronwallFit gronwall;
    SolveStats stats;
};

// Initial data as used by the solver: chi_R (zeta_eps * g_ini) on the velocity radius when enabled.
Field prepare_initial(const Field& g_ini, const SolverConfig& cfg);

SolveResult solve_linearized(const Field& g_ini, const std::vector<Field>& h_trajectory, const SolverConfig& cfg,
                             double T);

}  // namespace landau
