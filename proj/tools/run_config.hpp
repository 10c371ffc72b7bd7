#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <landau/grid.hpp>
#include <landau/solver.hpp>
#include <landau/weights.hpp>

namespace landau::lab {

enum class Mode { AuditWeights, VerifyKernels, VerifyBounds, SolveLinear, Picard, BoundaryDecay };

Mode parse_mode(const std::string& s);
std::string mode_name(Mode m);

enum class DataKind { Maxwellian, Random };

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field(field) {}
    std::string field;
};

GridSpec default_grid();

// Everything a run needs, resolved from the config file and the flags.
struct RunConfig {
    std::optional<Mode> mode;
    std::optional<double> gamma;
    Rational eta{1, 10};
    GridSpec grid = default_grid();
    std::uint64_t seed = 1;
    std::string out = "landau_out";

    // linear solve
    double epsilon = 1e-2;
    double R = 5.0;
    double dt = 0.0;
    Scheme scheme = Scheme::IMEX;
    ReactionVariant variant = ReactionVariant::BracketInverse;
    double kappa = 1.0;
    double d0 = 1.0;
    double T = 0.1;
    int max_order = 1;
    double cfl_safety = 0.4;
    double mollifier_epsilon = 0.0;
    int snapshot_every = 1;
    int ledger_every = 1;
    bool ledger = true;

    // initial data and linearization input (f-form; the solver works with g = e^{d0<v>} f)
    DataKind data = DataKind::Maxwellian;
    double data_scale = 1.0;
    double data_theta = 1.0;

    // picard
    double C_emp = 0.0;  // 0 measures it from the bound report
    double M0_bound = 0.0;
    int picard_max_iters = 20;
    double picard_tol = 1e-8;
    int picard_steps = 16;
    bool kappa_override = false;
    bool T_override = false;

    // verification suites
    int bound_samples = 256;
    int bound_max_order = 2;
    int kernel_samples = 10000;

    // boundary decay; empty selects V/2 and V/1.5
    std::vector<double> radii;

    void validate() const;
    // key=value lines in a fixed order; hashed into every artifact's provenance.
    std::string canonical() const;
    ModelParams model() const;
    SolverConfig solver() const;
};

// INI text with sections [run], [model], [grid], [solver], [data], [picard], [bounds], [kernels], [boundary].
// Unknown keys are rejected.
void apply_ini(RunConfig& cfg, const std::string& text);
void apply_ini_file(RunConfig& cfg, const std::string& path);

// "--grid vN[,xN]": v points per axis, optionally x points (enables one x axis when none is).
void apply_grid_flag(RunConfig& cfg, const std::string& spec);

}  // namespace landau::lab
