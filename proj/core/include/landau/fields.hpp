#pragma once

#include <cstdint>

#include "landau/grid.hpp"

namespace landau {

// (2 pi)^{-3/2} exp(-|v|^2/2), constant in x, scaled by `mass`.
Field maxwellian(const GridSpec& g, double mass = 1.0);

// Maxwellian with temperature theta centred at u.
Field maxwellian(const GridSpec& g, double mass, double theta, const Vec3& u);

// Sum of three seeded isotropic Gaussians in v (centres |c| <= 1.5, widths
// 0.7..1.3, amplitudes 0.5..1.5). With x_modulation the x-profile is
// 1 + 0.3 cos(x_0) on the first active x axis.
Field random_smooth_field(const GridSpec& g, std::uint64_t seed, bool x_modulation = true);

}  // namespace landau
