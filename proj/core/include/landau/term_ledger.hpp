#pragma once

#include <string>
#include <vector>

#include "landau/coefficients.hpp"
#include "landau/cutoffs.hpp"
#include "landau/grid.hpp"
#include "landau/multiindex.hpp"
#include "landau/weights.hpp"

namespace landau {

// Slot names, one per error functional of the energy estimate.
const std::vector<std::string>& ledger_manifest();
bool is_boundary_term(const std::string& name);

struct LedgerRow {
    MultiIndex index;
    double weight = 0.0;
    std::vector<double> values;  // aligned with the manifest, time integrated
};

struct TermLedger {
    std::vector<std::string> manifest;
    std::vector<LedgerRow> rows;
    std::vector<double> times;  // snapshot times that entered the time integrals

    double total(const std::string& name) const;
    double boundary_total() const;  // sum of the B slots over every row
    bool all_nonnegative() const;
    bool empty() const { return rows.empty(); }
};

struct LedgerParams {
    WeightHierarchy hierarchy;
    CutoffFamily family;
    int max_order = 2;
    double epsilon = 0.0;
    double kappa = 0.0;
};

// Integrands of every functional at one time: result[row][slot].
std::vector<std::vector<double>> ledger_integrands(const Field& G, const CoefficientField& cf, const LedgerParams& p);

// Trapezoid in time over snapshots; a single snapshot yields zero integrals.
TermLedger integrate_ledger(const std::vector<double>& times, const std::vector<std::vector<std::vector<double>>>& per_time,
                            const std::vector<MultiIndex>& indices, const LedgerParams& p);

}  // namespace landau
