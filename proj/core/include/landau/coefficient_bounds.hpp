#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "landau/convolution.hpp"
#include "landau/grid.hpp"

namespace landau {

struct BoundOptions {
    int samples = 256;
    std::uint64_t seed = 1;
    int max_order = 2;          // derivative orders placed on f
    double region = 0.75;       // samples restricted to |v| <= region * V
    int lattice_cells_v = 16;   // sample lattice per velocity axis (when it divides v_count)
    int lattice_cells_x = 8;    // sample lattice per active x axis (when it divides x_count)
    Engine engine = Engine::FFT;
};

struct BoundEntry {
    std::string name;
    std::string kind;  // "pointwise", "linf" or "interpolation"
    double constant = 0.0;  // max observed LHS / RHS
    long long samples = 0;  // ratios evaluated
    long long skipped = 0;  // LHS = RHS = 0
    long long violations = 0;  // RHS = 0 with LHS != 0
    bool finite = true;
    std::string worst_index;
    Vec3 worst_v{0.0, 0.0, 0.0};
    std::size_t worst_x = 0;
};

struct BoundReport {
    double gamma = 0.0;
    GridSpec grid;
    std::uint64_t seed = 0;
    int max_order = 0;
    int sample_points = 0;
    int derivative_indices = 0;
    double interpolation_box_constant = 0.0;  // (sum cell <v>^-4)^{1/2}; pi on the whole space
    std::vector<BoundEntry> entries;

    const BoundEntry& entry(const std::string& name) const;
    double max_constant() const;
    bool all_finite() const;
};

// Measures every pointwise and L-infinity coefficient bound on the field f.
// Derivatives of every order up to opt.max_order are placed on f, kernel
// derivatives (up to two) are analytic.
BoundReport verify_coefficient_bounds(const Field& f, double gamma, const BoundOptions& opt = {});

// Names of the bound entries, in report order.
const std::vector<std::string>& bound_names();

}  // namespace landau
