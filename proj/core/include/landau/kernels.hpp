#pragma once

#include "landau/grid.hpp"
#include "landau/sym3.hpp"

namespace landau {

// |z|^p with the conventions |0|^0 = 1 and |0|^p = 0 for p > 0.
double abs_pow(const Vec3& z, double p);

// a_ij(z) = (delta_ij - z_i z_j/|z|^2) |z|^(gamma+2); zero at z = 0.
Sym3 kernel_matrix(const Vec3& z, double gamma);

// c(z) = d^2 a_ij / dz_i dz_j = -2(gamma+3)|z|^gamma.
double kernel_c(const Vec3& z, double gamma);

// b_i(z) = d a_ij / dz_j = -2 z_i |z|^gamma.
Vec3 kernel_b(const Vec3& z, double gamma);

// d a_ij / dz_k, from the product-rule expansion.
Sym3 kernel_gradient(const Vec3& z, double gamma, int k);

// d^2 a_ij / dz_k dz_l, from the product-rule expansion.
Sym3 kernel_hessian(const Vec3& z, double gamma, int k, int l);

struct KernelSample {
    Vec3 z;
    Sym3 a;
    double c;
};
KernelSample sample_kernel(const Vec3& z, double gamma);

}  // namespace landau
