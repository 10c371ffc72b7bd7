#include "landau/cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace landau {

double smoothstep5(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double smoothstep5_d1(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return 30.0 * s * s * (1.0 - s) * (1.0 - s);
}

double smoothstep5_d2(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
}

double CutoffFamily::inner_radius(int m) const { return R / std::ldexp(1.0, m); }

void CutoffFamily::validate() const {
    if (!(R > 0.0)) throw std::invalid_argument("cutoff: R must be > 0");
    if (max_level < 0 || max_level > 10) throw std::invalid_argument("cutoff: max_level must be in 0..10");
    if (profile_degree != 5) throw std::invalid_argument("cutoff: only the quintic profile is implemented");
}

namespace {

void check_level(const CutoffFamily& fam, int m) {
    if (m < 0 || m > fam.max_level)
        throw std::out_of_range("psi: level " + std::to_string(m) + " outside 0.." + std::to_string(fam.max_level));
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Radial profile value and derivatives in r for level m >= 1.
struct Radial {
    double value, d1, d2;
};

Radial radial(const CutoffFamily& fam, int m, double r) {
    const double r0 = fam.inner_radius(m);
    const double w = 0.1 * r0;
    const double s = (r - r0) / w;
    return {1.0 - smoothstep5(s), -smoothstep5_d1(s) / w, -smoothstep5_d2(s) / (w * w)};
}

}  // namespace

double psi(const CutoffFamily& fam, int m, const Vec3& v) {
    check_level(fam, m);
    if (m == 0) return 1.0;
    return radial(fam, m, norm3(v)).value;
}

Vec3 psi_gradient(const CutoffFamily& fam, int m, const Vec3& v) {
    check_level(fam, m);
    if (m == 0) return {0.0, 0.0, 0.0};
    const double r = norm3(v);
    if (r == 0.0) return {0.0, 0.0, 0.0};
    const auto p = radial(fam, m, r);
    return {p.d1 * v[0] / r, p.d1 * v[1] / r, p.d1 * v[2] / r};
}

Sym3 psi_hessian(const CutoffFamily& fam, int m, const Vec3& v) {
    check_level(fam, m);
    Sym3 H;
    if (m == 0) return H;
    const double r = norm3(v);
    if (r == 0.0) return H;
    const auto p = radial(fam, m, r);
    for (const auto& ij : kSymPairs) {
        const int i = ij[0], j = ij[1];
        const double e = v[i] * v[j] / (r * r);
        H(i, j) = p.d2 * e + (p.d1 / r) * ((i == j ? 1.0 : 0.0) - e);
    }
    return H;
}

PsiBoundReport psi_derivative_bounds(const CutoffFamily& fam, int m, int samples) {
    if (m < 1) throw std::invalid_argument("psi_derivative_bounds: level must be >= 1");
    check_level(fam, m);
    PsiBoundReport rep;
    rep.level = m;
    rep.samples = samples;
    const double r0 = fam.inner_radius(m);
    const double rmax = 1.25 * fam.outer_radius(m);
    double prev = 2.0;
    for (int k = 0; k < samples; ++k) {
        const double r = rmax * k / (samples - 1);
        const auto p = radial(fam, m, r);
        // Hessian eigenvalues of a radial function: psi'' (radial) and psi'/r (tangential, twice).
        const double hess = r > 0.0 ? std::max(std::abs(p.d2), std::abs(p.d1 / r)) : std::abs(p.d2);
        rep.gradient_constant = std::max(rep.gradient_constant, std::abs(p.d1) * r0);
        rep.hessian_constant = std::max(rep.hessian_constant, hess * r0 * r0);
        if (p.value > prev) rep.monotone = false;
        prev = p.value;
        if (p.d1 != 0.0 && psi(fam, m - 1, {r, 0.0, 0.0}) != 1.0) rep.support_contained = false;
    }
    return rep;
}

double chi(double L, const std::array<double, 6>& p) {
    if (!(L > 3.0)) throw std::invalid_argument("chi: L must exceed 3");
    double rho = 0.0;
    for (double c : p) rho += c * c;
    rho = std::sqrt(rho);
    return 1.0 - smoothstep5(rho - (L - 2.0));
}

std::array<double, 6> chi_gradient(double L, const std::array<double, 6>& p) {
    if (!(L > 3.0)) throw std::invalid_argument("chi: L must exceed 3");
    std::array<double, 6> g{};
    double rho = 0.0;
    for (double c : p) rho += c * c;
    rho = std::sqrt(rho);
    if (rho == 0.0) return g;
    const double d = -smoothstep5_d1(rho - (L - 2.0));
    for (int k = 0; k < 6; ++k) g[k] = d * p[k] / rho;
    return g;
}

}  // namespace landau
