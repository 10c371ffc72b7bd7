#pragma once

#include <array>

#include "landau/grid.hpp"
#include "landau/sym3.hpp"

namespace landau {

// Quintic C^2 smoothstep on [0,1]: 0 -> 0, 1 -> 1, first and second derivatives vanish at both ends.
double smoothstep5(double s);
double smoothstep5_d1(double s);
double smoothstep5_d2(double s);

struct CutoffFamily {
    double R = 4.0;
    int max_level = 10;
    int profile_degree = 5;

    // Plateau radius R/2^m and support radius (11/10) R/2^m of level m >= 1.
    double inner_radius(int m) const;
    double outer_radius(int m) const { return 1.1 * inner_radius(m); }
    void validate() const;
};

double psi(const CutoffFamily& fam, int m, const Vec3& v);
Vec3 psi_gradient(const CutoffFamily& fam, int m, const Vec3& v);
Sym3 psi_hessian(const CutoffFamily& fam, int m, const Vec3& v);

struct PsiBoundReport {
    int level = 0;
    double gradient_constant = 0.0;  // sup |grad psi_m| * R / 2^m
    double hessian_constant = 0.0;   // sup |hess psi_m| * (R / 2^m)^2
    bool support_contained = true;   // grad psi_m != 0 only where psi_{m-1} == 1
    bool monotone = true;            // radial profile non-increasing
    int samples = 0;
};
PsiBoundReport psi_derivative_bounds(const CutoffFamily& fam, int m, int samples = 20001);

// Phase-space cutoff: 1 for |(x,v)| <= L-2, 0 for |(x,v)| >= L-1.
double chi(double L, const std::array<double, 6>& p);
std::array<double, 6> chi_gradient(double L, const std::array<double, 6>& p);

}  // namespace landau
