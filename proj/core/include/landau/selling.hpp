#pragma once

#include <array>
#include <optional>

#include "landau/sym3.hpp"

namespace landau {

using Offset3 = std::array<int, 3>;

struct SellingTerm {
    double rho = 0.0;
    Offset3 e{0, 0, 0};
};

// D = sum_k rho_k e_k e_k^T with rho_k >= 0 and integer offsets e_k, obtained from a
// D-obtuse superbase by Selling's reduction. Empty when D is not positive definite.
std::optional<std::array<SellingTerm, 6>> selling_decomposition(const Sym3& D, int max_iterations = 10000);

}  // namespace landau
