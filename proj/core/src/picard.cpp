#include "landau/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "landau/exponential_weight.hpp"
#include "landau/norms.hpp"

namespace landau {

void PicardParams::validate() const {
    if (!(M0 >= 0.0) || !std::isfinite(M0)) throw std::invalid_argument("PicardParams: M0 must be finite and >= 0");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("PicardParams: kappa must be > 0");
    if (!(d0 > 0.0)) throw std::invalid_argument("PicardParams: d0 must be > 0");
    if (!(T > 0.0) || T > T0 * (1.0 + 1e-12)) throw std::invalid_argument("PicardParams: T must lie in (0, T0]");
    if (max_iters < 1) throw std::invalid_argument("PicardParams: max_iters must be >= 1");
    if (!(contraction_tol > 0.0)) throw std::invalid_argument("PicardParams: contraction_tol must be > 0");
    if (time_steps < 2) throw std::invalid_argument("PicardParams: time_steps must be >= 2");
    if (norm_order < 0) throw std::invalid_argument("PicardParams: norm_order must be >= 0");
    if (max_restarts < 0) throw std::invalid_argument("PicardParams: max_restarts must be >= 0");
}

PicardParams select_parameters(const Field& g_ini, double d0, const ModelParams& params, double C_emp,
                               const SelectOptions& opt) {
    params.validate();
    g_ini.require_finite("select_parameters: g_ini");
    for (double v : g_ini.values)
        if (v < 0.0) throw std::invalid_argument("select_parameters: g_ini must be nonnegative");
    if (!(d0 > 0.0)) throw std::invalid_argument("select_parameters: d0 must be > 0");
    if (!(C_emp > 0.0) || !std::isfinite(C_emp)) throw std::invalid_argument("select_parameters: C_emp must be > 0");
    if (!(opt.epsilon > 0.0)) throw std::invalid_argument("select_parameters: epsilon must be > 0");

    PicardParams p;
    p.d0 = d0;
    p.C_emp = C_emp;
    p.norm_order = std::clamp(opt.norm_order, 0, g_ini.grid.max_derivative_order);
    const double measured = y_norm(g_ini, WeightHierarchy::main(params), p.norm_order);
    p.M0 = std::max(measured, opt.M0_bound);
    p.M_h = 2.0 * p.M0;
    const bool zero_data = !(p.M0 > 0.0);
    p.kappa = C_emp * (zero_data ? 1.0 : p.M_h);
    p.T0 = d0 / (2.0 * p.kappa);
    p.T = zero_data ? p.T0 : std::min(2.0 * std::log(2.0) / (C_emp * p.M0), p.T0);

    const double eps = opt.epsilon;
    const double expo = 1.0 + params.delta_value() - params.gamma;
    const double bracket = -2.0 * std::log(eps) + std::log(measured * measured + eps) + p.kappa * p.T;
    p.log_R_min = std::log(2.0) + bracket / expo;
    p.R_min = std::exp(p.log_R_min);
    return p;
}

double empirical_constant(const BoundReport& report, double safety) {
    const double c = report.max_constant();
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("empirical_constant: no finite bound constant");
    return safety * c;
}

ContractionNorm contraction_norm(const std::vector<Field>& w, const ModelParams& params) {
    if (w.empty()) throw std::invalid_argument("contraction_norm: empty trajectory");
    ContractionNorm out;
    const WeightHierarchy h = WeightHierarchy::contraction(params);
    out.order = std::min(h.max_order, w.front().grid.max_derivative_order);
    out.fallback = out.order < h.max_order;
    out.value = energy_report(w, h, out.order).E_T;
    return out;
}

namespace {

SolverConfig picard_config(const SolverConfig& base, const PicardParams& p) {
    SolverConfig c = base;
    c.weight = {p.d0, p.kappa};
    c.dt = p.T / p.time_steps;
    c.snapshot_every = 1;
    c.compute_ledger = false;
    c.max_derivative_order = p.norm_order;
    // kappa sets the time scale here, so a fixed growth cap would be meaningless; the budget check replaces it.
    c.growth_cap = std::numeric_limits<double>::infinity();
    return c;
}

// f = exp(-d<v>) g with round-off negatives removed; anything below -1e-12 max aborts.
std::vector<Field> coefficient_inputs(const std::vector<Field>& g, const ExponentialWeight& w,
                                      const ContractionHistory& hist) {
    std::vector<Field> out;
    out.reserve(g.size());
    for (const Field& gk : g) {
        Field f = to_f(gk, w, gk.time);
        f.time = gk.time;
        double fmax = 0.0, fmin = 0.0;
        for (double v : f.values) {
            fmax = std::max(fmax, v);
            fmin = std::min(fmin, v);
        }
        if (fmin < -1e-12 * fmax) {
            std::ostringstream os;
            os << "picard: iterate has f = " << fmin << " < -1e-12 max f at t = " << gk.time;
            throw PicardAbort(PicardAbort::Reason::Negativity, os.str(), hist);
        }
        for (double& v : f.values) v = std::max(v, 0.0);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Field> difference(const std::vector<Field>& a, const std::vector<Field>& b) {
    std::vector<Field> d;
    d.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        Field w = a[k];
        for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] -= b[k].values[i];
        d.push_back(std::move(w));
    }
    return d;
}

struct BudgetExceeded {
    ContractionHistory history;
    std::string what;
};

PicardResult run_once(const Field& g_ini, const PicardParams& p, const SolverConfig& base, ContractionHistory hist) {
    const SolverConfig cfg = picard_config(base, p);
    const GridSpec& g = g_ini.grid;
    const double dt = cfg.dt;

    // g^0: the prepared initial data held constant in time.
    Field G0 = prepare_initial(g_ini, cfg);
    const auto mask = interior_mask(g, cfg.R);
    const std::size_t nv = g.nv_total();
    for (std::size_t i = 0; i < G0.values.size(); ++i)
        if (!mask[i % nv]) G0.values[i] = 0.0;
    std::vector<Field> prev;
    for (int k = 0; k <= p.time_steps; ++k) {
        G0.time = k * dt;
        prev.push_back(G0);
    }

    const double budget = 2.0 * p.M0 * (1.0 + 1e-6);
    double w_first = 0.0, w_last = 0.0;
    int growing = 0;
    PicardResult out;
    out.params = p;
    hist.entries.clear();
    hist.converged = false;
    hist.T = p.T;
    for (int n = 1; n <= p.max_iters; ++n) {
        const auto h = coefficient_inputs(prev, cfg.weight, hist);
        SolveResult sr = solve_linearized(g_ini, h, cfg, p.T);
        if (sr.trajectory.size() != prev.size())
            throw std::logic_error("picard: snapshot count changed between iterations");

        const ContractionNorm wn = contraction_norm(difference(sr.trajectory, prev), cfg.params);
        hist.norm_order = wn.order;
        hist.norm_fallback = wn.fallback;
        ContractionEntry e;
        e.iteration = n;
        e.w_norm = wn.value;
        e.g_norm = sr.energy.ball_energy;
        e.budget_ok = e.g_norm <= budget;
        if (n > 1 && w_last > 0.0) {
            e.has_ratio = true;
            e.ratio = e.w_norm / w_last;
        }
        hist.entries.push_back(e);
        out.last_solve = sr.stats;
        prev = std::move(sr.trajectory);

        if (!e.budget_ok) {
            std::ostringstream os;
            os << "picard: ||g^" << n << "||_E = " << e.g_norm << " exceeds 2 M0 = " << 2.0 * p.M0;
            throw BudgetExceeded{hist, os.str()};
        }
        if (n == 1) w_first = e.w_norm;
        w_last = e.w_norm;
        if (e.w_norm <= p.contraction_tol * w_first || e.w_norm == 0.0) {
            hist.converged = true;
            break;
        }
        growing = (e.has_ratio && e.ratio >= 1.0) ? growing + 1 : 0;
        if (growing >= 3) {
            std::ostringstream os;
            os << "picard: contraction ratio >= 1 for 3 consecutive iterations (last " << e.ratio << ")";
            throw PicardAbort(PicardAbort::Reason::Divergence, os.str(), hist);
        }
    }
    out.trajectory = std::move(prev);
    out.history = std::move(hist);
    return out;
}

}  // namespace

PicardResult iterate(const Field& g_ini, const PicardParams& params, const SolverConfig& cfg) {
    params.validate();
    g_ini.require_finite("picard: g_ini");
    const double y0 = y_norm(g_ini, WeightHierarchy::main(cfg.params), params.norm_order);
    if (y0 > params.M0 * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "picard: ||g_ini||_Y = " << y0 << " exceeds M0 = " << params.M0;
        throw std::invalid_argument(os.str());
    }
    PicardParams p = params;
    ContractionHistory hist;
    for (int attempt = 0;; ++attempt) {
        hist.restarts = attempt;
        try {
            return run_once(g_ini, p, cfg, hist);
        } catch (BudgetExceeded& b) {
            if (attempt >= p.max_restarts) throw PicardAbort(PicardAbort::Reason::Budget, b.what, b.history);
            p.T *= 0.5;
        }
    }
}

ResidualReport nonlinear_residual(const std::vector<Field>& traj, const SolverConfig& cfg) {
    if (traj.size() < 3) throw std::invalid_argument("nonlinear_residual: need at least three snapshots");
    const auto h = coefficient_inputs(traj, cfg.weight, {});
    const LinearizedOperator op(traj.front().grid, cfg, h);
    const double omega = WeightHierarchy::contraction(cfg.params)(MultiIndex{});
    std::vector<double> ts, r2, d2;
    for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
        const double t = traj[k].time;
        const double span = traj[k + 1].time - traj[k - 1].time;
        Field L = op.rhs(traj[k], t);
        Field dG = traj[k];
        for (std::size_t i = 0; i < dG.values.size(); ++i) {
            dG.values[i] = (traj[k + 1].values[i] - traj[k - 1].values[i]) / span;
            L.values[i] = dG.values[i] - L.values[i];
        }
        ts.push_back(t);
        r2.push_back(std::pow(weighted_l2(L, omega), 2));
        d2.push_back(std::pow(weighted_l2(dG, omega), 2));
    }
    ResidualReport out;
    out.samples = static_cast<int>(ts.size());
    if (ts.size() == 1) {
        out.absolute = std::sqrt(r2[0]);
        out.relative = d2[0] > 0.0 ? std::sqrt(r2[0] / d2[0]) : 0.0;
        return out;
    }
    out.absolute = std::sqrt(trapezoid(ts, r2));
    const double ref = std::sqrt(trapezoid(ts, d2));
    out.relative = ref > 0.0 ? out.absolute / ref : 0.0;
    return out;
}

ResidualOrder residual_order(const Field& g_ini, const PicardParams& params, const SolverConfig& cfg) {
    ResidualOrder out;
    PicardParams p = params;
    const PicardResult coarse = iterate(g_ini, p, cfg);
    out.coarse = nonlinear_residual(coarse.trajectory, picard_config(cfg, coarse.params));
    p = coarse.params;
    p.time_steps *= 2;
    const PicardResult fine = iterate(g_ini, p, cfg);
    out.fine = nonlinear_residual(fine.trajectory, picard_config(cfg, fine.params));
    out.order = std::log2(out.coarse.absolute / out.fine.absolute);
    return out;
}

PerturbationReport perturbation_diagnostic(const Field& g_ini, const PicardParams& params, const SolverConfig& cfg,
                                           double rel) {
    if (!(rel > 0.0)) throw std::invalid_argument("perturbation_diagnostic: rel must be > 0");
    Field g2 = g_ini;
    for (double& v : g2.values) v *= 1.0 + rel;
    PicardParams p = params;
    p.M0 *= 1.0 + rel;
    p.M_h *= 1.0 + rel;
    const PicardResult a = iterate(g_ini, p, cfg);
    p.T = a.params.T;
    p.max_restarts = 0;
    const PicardResult b = iterate(g2, p, cfg);

    PerturbationReport out;
    const WeightHierarchy h = WeightHierarchy::contraction(cfg.params);
    Field d0 = g2;
    for (std::size_t i = 0; i < d0.values.size(); ++i) d0.values[i] -= g_ini.values[i];
    out.initial_distance = y_norm(d0, h, std::min(h.max_order, g_ini.grid.max_derivative_order));
    out.final_distance = contraction_norm(difference(b.trajectory, a.trajectory), cfg.params).value;
    out.ratio = out.initial_distance > 0.0 ? out.final_distance / out.initial_distance : 0.0;
    return out;
}

}  // namespace landau
