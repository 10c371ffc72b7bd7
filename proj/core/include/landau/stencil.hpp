#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "landau/grid.hpp"
#include "landau/multiindex.hpp"

namespace landau {

// Finite-difference weights for the k-th derivative at z on arbitrary nodes (Fornberg).
std::vector<double> fd_weights(double z, const std::vector<double>& nodes, int k);

// Per-position stencil rows for one grid axis.
struct Stencil1D {
    int n = 0;
    bool periodic = false;
    std::vector<int> first;                    // offset of the first node relative to the target point
    std::vector<std::vector<double>> weights;  // weights[i][j] multiplies u[i + first[i] + j]

    static Stencil1D make(int n, double h, int derivative_order, int accuracy, bool periodic);
    static int central_width(int derivative_order, int accuracy);
    static int one_sided_width(int derivative_order, int accuracy) { return derivative_order + accuracy; }
};

// Apply a 1-D stencil along logical axis `axis` of an array with the given dims.
void apply_along_axis(const std::vector<double>& in, std::vector<double>& out, const std::array<std::size_t, 6>& dims,
                      int axis, const Stencil1D& st);

bool derivative_resolvable(const GridSpec& g, const MultiIndex& m);

// Central differences in the interior, periodic in x, one-sided at the v-box faces.
Field derivative(const Field& f, const MultiIndex& m);

}  // namespace landau
