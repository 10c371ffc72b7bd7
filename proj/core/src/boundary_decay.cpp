#include "landau/boundary_decay.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <set>
#include <stdexcept>

namespace landau {

namespace {

double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

BoundaryDecayReport boundary_decay_audit(const std::vector<std::pair<double, TermLedger>>& runs,
                                         const ModelParams& params) {
    std::set<double> distinct;
    for (const auto& r : runs) {
        if (!(r.first > 0.0)) throw std::invalid_argument("boundary_decay_audit: radii must be positive");
        distinct.insert(r.first);
    }
    if (distinct.size() < 2) throw std::invalid_argument("boundary_decay_audit: needs runs at two or more distinct R");

    BoundaryDecayReport rep;
    rep.params = params;
    rep.expected_exponent = params.gamma - 1.0 - params.delta_value();
    std::vector<std::string> names;
    for (const auto& n : ledger_manifest())
        if (is_boundary_term(n)) names.push_back(n);

    for (const auto& [R, ledger] : runs) {
        BoundaryDecayRun run;
        run.R = R;
        for (const auto& n : names) run.totals[n] = ledger.total(n);
        run.total = ledger.boundary_total();
        rep.runs.push_back(std::move(run));
    }
    std::sort(rep.runs.begin(), rep.runs.end(), [](const auto& a, const auto& b) { return a.R < b.R; });

    std::vector<double> lr;
    for (const auto& r : rep.runs) lr.push_back(std::log(r.R));
    auto fit = [&](auto value) {
        std::vector<double> ly;
        for (const auto& r : rep.runs) {
            const double v = value(r);
            if (!(v > 0.0) || !std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
            ly.push_back(std::log(v));
        }
        return log_slope(lr, ly);
    };
    rep.exponent = fit([](const BoundaryDecayRun& r) { return r.total; });
    rep.fit_valid = std::isfinite(rep.exponent);
    for (const auto& n : names) rep.term_exponents[n] = fit([&](const BoundaryDecayRun& r) { return r.totals.at(n); });
    return rep;
}

BoundaryDecayReport run_boundary_decay(const Field& g_ini, const std::vector<Field>& h_trajectory,
                                       const SolverConfig& cfg, double T, const std::vector<double>& radii) {
    std::vector<std::future<TermLedger>> jobs;
    for (double R : radii) {
        SolverConfig c = cfg;
        c.R = R;
        c.compute_ledger = true;
        jobs.push_back(std::async(std::launch::async, [c, T, &g_ini, &h_trajectory] {
            return solve_linearized(g_ini, h_trajectory, c, T).ledger;
        }));
    }
    std::vector<std::pair<double, TermLedger>> runs;
    for (std::size_t k = 0; k < radii.size(); ++k) runs.emplace_back(radii[k], jobs[k].get());
    return boundary_decay_audit(runs, cfg.params);
}

}  // namespace landau
