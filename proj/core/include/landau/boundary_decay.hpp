#pragma once

#include <map>
#include <string>
#include <vector>

#include "landau/solver.hpp"
#include "landau/term_ledger.hpp"
#include "landau/weights.hpp"

namespace landau {

struct BoundaryDecayRun {
    double R = 0.0;
    std::map<std::string, double> totals;  // B1..B5 integrated over every multi-index
    double total = 0.0;
};

struct BoundaryDecayReport {
    ModelParams params;
    std::vector<BoundaryDecayRun> runs;
    // Least-squares slope of ln(total) against ln(R); NaN when some total is not positive.
    double exponent = 0.0;
    std::map<std::string, double> term_exponents;
    double expected_exponent = 0.0;  // gamma - 1 - delta
    bool fit_valid = false;
};

// Fits the decay of the boundary ledger totals in R. Needs at least two distinct radii.
BoundaryDecayReport boundary_decay_audit(const std::vector<std::pair<double, TermLedger>>& runs,
                                         const ModelParams& params);

// Runs the linear solve once per radius (concurrently) and audits the resulting ledgers.
BoundaryDecayReport run_boundary_decay(const Field& g_ini, const std::vector<Field>& h_trajectory,
                                       const SolverConfig& cfg, double T, const std::vector<double>& radii);

}  // namespace landau
