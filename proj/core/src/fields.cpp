#include "landau/fields.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace landau {

Field maxwellian(const GridSpec& g, double mass) { return maxwellian(g, mass, 1.0, Vec3{0.0, 0.0, 0.0}); }

Field maxwellian(const GridSpec& g, double mass, double theta, const Vec3& u) {
    const double norm = mass * std::pow(2.0 * std::numbers::pi * theta, -1.5);
    return make_field(g, [&](const Vec3&, const Vec3& v) {
        double r2 = 0.0;
        for (int k = 0; k < 3; ++k) r2 += (v[k] - u[k]) * (v[k] - u[k]);
        return norm * std::exp(-0.5 * r2 / theta);
    });
}

Field random_smooth_field(const GridSpec& g, std::uint64_t seed, bool x_modulation) {
    struct Bump {
        Vec3 c;
        double width;
        double amp;
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> width(0.7, 1.3);
    std::uniform_real_distribution<double> amp(0.5, 1.5);
    std::array<Bump, 3> bumps;
    for (auto& b : bumps) {
        Vec3 c;
        double r2;
        do {
            for (auto& ck : c) ck = 1.5 * unit(rng);
            r2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
        } while (r2 > 1.5 * 1.5);
        b = {c, width(rng), amp(rng)};
    }
    const bool modulate = x_modulation && g.x_dims > 0;
    return make_field(g, [&](const Vec3& x, const Vec3& v) {
        double s = 0.0;
        for (const auto& b : bumps) {
            double r2 = 0.0;
            for (int k = 0; k < 3; ++k) r2 += (v[k] - b.c[k]) * (v[k] - b.c[k]);
            s += b.amp * std::exp(-0.5 * r2 / (b.width * b.width));
        }
        return modulate ? s * (1.0 + 0.3 * std::cos(x[0])) : s;
    });
}

}  // namespace landau
