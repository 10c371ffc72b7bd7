#pragma once

#include <vector>

#include "landau/grid.hpp"

namespace landau {

// Separable bump zeta(s) = prod_k b(s_k), b(s) = 1 - smoothstep5(|s|), scaled to radius epsilon
// on every active axis and normalized so the discrete weights sum to one per axis.
struct MollifierSpec {
    double epsilon = 0.0;
};

// Discrete 1-D weights for spacing h, centred at offset 0 (size 2*half+1).
std::vector<double> mollifier_weights(double epsilon, double h);

// Periodic in x, zero extension beyond the velocity box.
Field mollify(const Field& f, const MollifierSpec& spec);

}  // namespace landau
