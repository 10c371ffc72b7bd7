#include "landau/selling.hpp"

#include <cmath>

namespace landau {

namespace {

double form(const Sym3& D, const Offset3& a, const Offset3& b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += D(i, j) * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    return s;
}

Offset3 add(const Offset3& a, const Offset3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Offset3 neg(const Offset3& a) { return {-a[0], -a[1], -a[2]}; }
Offset3 cross(const Offset3& a, const Offset3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool positive_definite(const Sym3& D) {
    const double m1 = D(0, 0);
    const double m2 = D(0, 0) * D(1, 1) - D(0, 1) * D(0, 1);
    const double m3 = D(0, 0) * (D(1, 1) * D(2, 2) - D(1, 2) * D(1, 2)) -
                      D(0, 1) * (D(0, 1) * D(2, 2) - D(1, 2) * D(0, 2)) +
                      D(0, 2) * (D(0, 1) * D(1, 2) - D(1, 1) * D(0, 2));
    return m1 > 0.0 && m2 > 0.0 && m3 > 0.0 && std::isfinite(m3);
}

}  // namespace

std::optional<std::array<SellingTerm, 6>> selling_decomposition(const Sym3& D, int max_iterations) {
    if (!positive_definite(D)) return std::nullopt;
    std::array<Offset3, 4> b{Offset3{1, 0, 0}, Offset3{0, 1, 0}, Offset3{0, 0, 1}, Offset3{-1, -1, -1}};
    // Tolerance relative to the scale of D so roundoff cannot make the reduction cycle.
    const double tol = 1e-14 * D.trace();
    bool obtuse = false;
    for (int it = 0; it < max_iterations && !obtuse; ++it) {
        obtuse = true;
        for (std::size_t i = 0; i < 4 && obtuse; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                if (form(D, b[i], b[j]) <= tol) continue;
                std::size_t k = 0;
                while (k == i || k == j) ++k;
                std::size_t l = k + 1;
                while (l == i || l == j) ++l;
                const Offset3 bi = b[i];
                b[k] = add(b[k], bi);
                b[l] = add(b[l], bi);
                b[i] = neg(bi);
                obtuse = false;
                break;
            }
    }
    if (!obtuse) return std::nullopt;
    std::array<SellingTerm, 6> out;
    std::size_t n = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            std::size_t k = 0;
            while (k == i || k == j) ++k;
            std::size_t l = k + 1;
            while (l == i || l == j) ++l;
            out[n].rho = std::max(0.0, -form(D, b[i], b[j]));
            out[n].e = cross(b[k], b[l]);
            ++n;
        }
    return out;
}

}  // namespace landau
