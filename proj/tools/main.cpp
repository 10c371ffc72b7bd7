#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include <landau/threads.hpp>

#include "run_config.hpp"
#include "runner.hpp"

int main(int argc, char** argv) {
    using namespace landau::lab;

    CLI::App app{"Verification suites and simulation campaigns for the linearized and nonlinear Landau solvers"};
    std::string mode, config, grid, out;
    std::optional<double> gamma, R, epsilon, kappa, T;
    std::optional<std::string> eta;
    std::optional<long long> seed;
    std::optional<int> max_order;
    app.add_option("--mode", mode,
                   "audit-weights | verify-kernels | verify-bounds | solve-linear | picard | boundary-decay");
    app.add_option("--config", config, "INI file; flags override its values");
    app.add_option("--gamma", gamma, "interaction exponent in [0, 1]");
    app.add_option("--eta", eta, "hierarchy perturbation at gamma = 1 (decimal or p/q)");
    app.add_option("--grid", grid, "vN[,xN] points per velocity axis and optionally per x axis");
    app.add_option("--R", R, "velocity-domain radius");
    app.add_option("--epsilon", epsilon, "viscosity");
    app.add_option("--kappa", kappa, "damping rate of the exponential weight");
    app.add_option("--T", T, "final time");
    app.add_option("--seed", seed, "seed for sampling and random data");
    app.add_option("--out", out, "output directory");
    app.add_option("--max-order", max_order, "derivative order of the energy norms");
    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    try {
        landau::configure_threads_from_env();
        if (!config.empty()) apply_ini_file(cfg, config);
        if (!mode.empty()) cfg.mode = parse_mode(mode);
        if (gamma) cfg.gamma = *gamma;
        if (eta) apply_ini(cfg, "[model]\neta=" + *eta + "\n");
        if (!grid.empty()) apply_grid_flag(cfg, grid);
        if (R) cfg.R = *R;
        if (epsilon) cfg.epsilon = *epsilon;
        if (kappa) {
            cfg.kappa = *kappa;
            cfg.kappa_override = true;
        }
        if (T) {
            cfg.T = *T;
            cfg.T_override = true;
        }
        if (seed) {
            if (*seed < 0) throw ConfigError("seed", "must be >= 0");
            cfg.seed = static_cast<std::uint64_t>(*seed);
        }
        if (!out.empty()) cfg.out = out;
        if (max_order) cfg.max_order = *max_order;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    return run(cfg, std::cout);
}
