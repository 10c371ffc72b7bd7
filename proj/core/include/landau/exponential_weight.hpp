#pragma once

#include "landau/grid.hpp"

namespace landau {

// d(t) = d0 - kappa t on [0, T0], T0 = d0 / (2 kappa).
struct ExponentialWeight {
    double d0 = 1.0;
    double kappa = 1.0;

    double T0() const { return d0 / (2.0 * kappa); }
    double d(double t) const { return d0 - kappa * t; }
    void validate() const;
};

// g = exp(d(t) <v>) f. Throws std::overflow_error naming the offending <v>
// when the multiplier or the product leaves the double range.
Field to_g(const Field& f, const ExponentialWeight& w, double t);
// f = exp(-d(t) <v>) g.
Field to_f(const Field& g, const ExponentialWeight& w, double t);

}  // namespace landau
