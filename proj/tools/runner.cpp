#include "runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <landau/boundary_decay.hpp>
#include <landau/coefficient_bounds.hpp>
#include <landau/exponential_weight.hpp>
#include <landau/fields.hpp>
#include <landau/kernel_checks.hpp>
#include <landau/picard.hpp>
#include <landau/report_io.hpp>
#include <landau/snapshot_io.hpp>
#include <landau/solver.hpp>
#include <landau/weight_audit.hpp>

namespace landau::lab {

namespace {

namespace fs = std::filesystem;

class Artifacts {
public:
    Artifacts(const RunConfig& cfg, std::ostream& log) : dir_(cfg.out), log_(log) {
        fs::create_directories(dir_);
        prov_.config_hash = hex64(fnv1a64(cfg.canonical()));
        prov_.grid = cfg.grid;
        text("config.ini", cfg.canonical());
    }
    const Provenance& provenance() const { return prov_; }

    void text(const std::string& name, const std::string& body) {
        std::ofstream os(dir_ / name, std::ios::binary);
        os << body;
        if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
        log_ << "wrote " << (dir_ / name).string() << "\n";
    }
    void snapshot(const std::string& name, const Field& f) {
        write_snapshot_file((dir_ / name).string(), f);
        log_ << "wrote " << (dir_ / name).string() << "\n";
    }

private:
    fs::path dir_;
    std::ostream& log_;
    Provenance prov_;
};

Field initial_f(const RunConfig& cfg) {
    if (cfg.data == DataKind::Random) {
        Field f = random_smooth_field(cfg.grid, cfg.seed, cfg.grid.x_dims > 0);
        for (double& v : f.values) v *= cfg.data_scale;
        return f;
    }
    return maxwellian(cfg.grid, cfg.data_scale, cfg.data_theta, {0.0, 0.0, 0.0});
}

int audit_weights(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
    const AuditReport r = check_split_inequalities(WeightHierarchy::main(cfg.model()));
    art.text("audit.json", report_json(r, art.provenance()));
    log << "weight audit: " << r.total_cases << " cases, " << r.total_violations << " violations\n";
    return r.passed() ? kPass : kWeightAuditFail;
}

int verify_kernels(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
    KernelCheckOptions opt;
    opt.samples = cfg.kernel_samples;
    opt.seed = cfg.seed;
    const KernelCheckReport r = landau::verify_kernels(*cfg.gamma, opt);
    art.text("kernels.json", report_json(r, art.provenance()));
    for (const auto& c : r.checks)
        log << "  " << c.name << ": " << c.max_error << " (tol " << c.tolerance << ") "
            << (c.passed ? "ok" : "FAIL") << "\n";
    return r.passed() ? kPass : kKernelFail;
}

BoundOptions bound_options(const RunConfig& cfg) {
    BoundOptions o;
    o.samples = cfg.bound_samples;
    o.seed = cfg.seed;
    o.max_order = cfg.bound_max_order;
    return o;
}

bool bounds_ok(const BoundReport& r) {
    if (!r.all_finite()) return false;
    for (const auto& e : r.entries)
        if (e.violations > 0) return false;
    return true;
}

int verify_bounds(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
    const BoundOptions opt = bound_options(cfg);
    const Field maxw = maxwellian(cfg.grid, cfg.data_scale, cfg.data_theta, {0.0, 0.0, 0.0});
    Field rnd = random_smooth_field(cfg.grid, cfg.seed, cfg.grid.x_dims > 0);
    for (double& v : rnd.values) v *= cfg.data_scale;
    const BoundReport a = verify_coefficient_bounds(maxw, *cfg.gamma, opt);
    const BoundReport b = verify_coefficient_bounds(rnd, *cfg.gamma, opt);
    art.text("bounds_maxwellian.json", report_json(a, art.provenance()));
    art.text("bounds_random.json", report_json(b, art.provenance()));
    log << "bound constants: maxwellian max " << a.max_constant() << ", random max " << b.max_constant() << "\n";
    return bounds_ok(a) && bounds_ok(b) ? kPass : kBoundFail;
}

int solve_linear(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
    const SolverConfig sc = cfg.solver();
    const Field f = initial_f(cfg);
    const Field g = to_g(f, sc.weight, 0.0);
    const SolveResult r = solve_linearized(g, {f}, sc, cfg.T);
    const auto& P = art.provenance();
    art.text("energy.json", report_json(r.energy, P));
    art.text("energy.csv", energy_csv(r.energy));
    if (sc.compute_ledger) art.text("ledger.json", report_json(r.ledger, P));
    art.text("solve.json", report_json(r.stats, r.gronwall, P));
    art.snapshot("final.lndf", r.trajectory.back());
    log << "steps " << r.stats.steps << ", dt " << r.stats.dt << ", min F/max F " << r.stats.min_F_ratio
        << ", Gronwall C " << r.gronwall.C_fit << (r.gronwall.holds ? " (holds)" : " (violated)") << "\n";
    return r.stats.positivity_ok && r.gronwall.holds ? kPass : kStabilityAbort;
}

int picard(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
    const SolverConfig sc = cfg.solver();
    const Field f = initial_f(cfg);
    const Field g = to_g(f, {cfg.d0, 1.0}, 0.0);
    double C = cfg.C_emp;
    if (!(C > 0.0)) C = empirical_constant(verify_coefficient_bounds(f, *cfg.gamma, bound_options(cfg)));

    SelectOptions so;
    so.M0_bound = cfg.M0_bound;
    so.norm_order = cfg.max_order;
    so.epsilon = cfg.epsilon;
    PicardParams p = select_parameters(g, cfg.d0, cfg.model(), C, so);
    if (cfg.kappa_override) {
        p.kappa = cfg.kappa;
        p.T0 = p.d0 / (2.0 * p.kappa);
        p.T = std::min(p.T, p.T0);
    }
    if (cfg.T_override) {
        if (cfg.T > p.T0 * (1.0 + 1e-12)) throw ConfigError("T", "exceeds T0 = d0/(2 kappa) = " + std::to_string(p.T0));
        p.T = cfg.T;
    }
    p.max_iters = cfg.picard_max_iters;
    p.contraction_tol = cfg.picard_tol;
    p.time_steps = cfg.picard_steps;
    log << "picard: C_emp " << C << ", M0 " << p.M0 << ", kappa " << p.kappa << ", T " << p.T << ", log R_min "
        << p.log_R_min << "\n";

    const auto& P = art.provenance();
    try {
        const PicardResult r = iterate(g, p, sc);
        art.text("contraction.json", report_json(r.history, r.params, P));
        const CutoffFamily fam{sc.R, 10, 5};
        const EnergyReport e = energy_report(r.trajectory, WeightHierarchy::main(sc.params), p.norm_order, &fam);
        art.text("energy.json", report_json(e, P));
        art.text("energy.csv", energy_csv(e));
        art.snapshot("final.lndf", r.trajectory.back());
        for (const auto& en : r.history.entries)
            log << "  n=" << en.iteration << " |w|=" << en.w_norm << (en.has_ratio ? " ratio=" : "")
                << (en.has_ratio ? std::to_string(en.ratio) : "") << "\n";
        if (!r.history.converged) {
            log << "picard: not converged after " << p.max_iters << " iterations\n";
            return kContractionAbort;
        }
        return kPass;
    } catch (const PicardAbort& a) {
        art.text("contraction.json", report_json(a.history, p, P));
        throw;
    }
}

int boundary_decay(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
    const SolverConfig sc = cfg.solver();
    const Field f = initial_f(cfg);
    const Field g = to_g(f, sc.weight, 0.0);
    std::vector<double> radii = cfg.radii;
    if (radii.empty()) radii = {cfg.grid.v_extent / 2.0, cfg.grid.v_extent / 1.5};
    const BoundaryDecayReport r = run_boundary_decay(g, {f}, sc, cfg.T, radii);
    art.text("boundary_decay.json", report_json(r, art.provenance()));
    log << "boundary decay exponent " << r.exponent << " (rate " << r.expected_exponent << ")\n";
    const bool ok = r.fit_valid && r.exponent < 0.0 && r.exponent <= 0.8 * r.expected_exponent;
    return ok ? kPass : kBoundaryDecayFail;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    try {
        cfg.validate();
        cfg.solver().validate(cfg.grid);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        Artifacts art(cfg, log);
        switch (*cfg.mode) {
            case Mode::AuditWeights: return audit_weights(cfg, art, log);
            case Mode::VerifyKernels: return verify_kernels(cfg, art, log);
            case Mode::VerifyBounds: return verify_bounds(cfg, art, log);
            case Mode::SolveLinear: return solve_linear(cfg, art, log);
            case Mode::Picard: return picard(cfg, art, log);
            case Mode::BoundaryDecay: return boundary_decay(cfg, art, log);
        }
        return kInternalError;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const PicardAbort& e) {
        log << "contraction abort: " << e.what() << "\n";
        return kContractionAbort;
    } catch (const SolverAbort& e) {
        log << "stability abort: " << e.what() << "\n";
        return kStabilityAbort;
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kInternalError;
    }
}

}  // namespace landau::lab
