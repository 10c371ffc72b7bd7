#include "landau/kernels.hpp"

#include <cmath>

namespace landau {

namespace {

double norm2(const Vec3& z) { return z[0] * z[0] + z[1] * z[1] + z[2] * z[2]; }
double kd(int i, int j) { return i == j ? 1.0 : 0.0; }

}  // namespace

double abs_pow(const Vec3& z, double p) {
    const double r2 = norm2(z);
    if (r2 == 0.0) return p == 0.0 ? 1.0 : 0.0;
    return std::pow(r2, 0.5 * p);
}

Sym3 kernel_matrix(const Vec3& z, double gamma) {
    Sym3 a;
    const double r2 = norm2(z);
    if (r2 == 0.0) return a;
    const double rg = std::pow(r2, 0.5 * gamma);
    for (const auto& ij : kSymPairs) {
        const int i = ij[0], j = ij[1];
        a(i, j) = (kd(i, j) * r2 - z[i] * z[j]) * rg;
    }
    return a;
}

double kernel_c(const Vec3& z, double gamma) { return -2.0 * (gamma + 3.0) * abs_pow(z, gamma); }

Vec3 kernel_b(const Vec3& z, double gamma) {
    const double rg = abs_pow(z, gamma);
    return {-2.0 * z[0] * rg, -2.0 * z[1] * rg, -2.0 * z[2] * rg};
}

Sym3 kernel_gradient(const Vec3& z, double gamma, int k) {
    Sym3 g;
    const double r2 = norm2(z);
    if (r2 == 0.0) return g;
    const double rg = std::pow(r2, 0.5 * gamma);
    const double rg2 = rg / r2;
    for (const auto& ij : kSymPairs) {
        const int i = ij[0], j = ij[1];
        g(i, j) = kd(i, j) * (gamma + 2.0) * rg * z[k] - (kd(i, k) * z[j] + kd(j, k) * z[i]) * rg -
                  gamma * z[i] * z[j] * z[k] * rg2;
    }
    return g;
}

Sym3 kernel_hessian(const Vec3& z, double gamma, int k, int l) {
    Sym3 h;
    const double r2 = norm2(z);
    if (r2 == 0.0) {
        if (gamma == 0.0) {
            for (const auto& ij : kSymPairs) {
                const int i = ij[0], j = ij[1];
                h(i, j) = 2.0 * kd(i, j) * kd(k, l) - kd(i, k) * kd(j, l) - kd(j, k) * kd(i, l);
            }
        }
        return h;
    }
    const double rg = std::pow(r2, 0.5 * gamma);
    const double rg2 = rg / r2;
    const double rg4 = rg2 / r2;
    for (const auto& ij : kSymPairs) {
        const int i = ij[0], j = ij[1];
        double v = kd(i, j) * (gamma + 2.0) * (kd(k, l) * rg + gamma * z[k] * z[l] * rg2);
        v -= (kd(i, k) * kd(j, l) + kd(j, k) * kd(i, l)) * rg;
        v -= gamma * (kd(i, k) * z[j] + kd(j, k) * z[i]) * z[l] * rg2;
        v -= gamma * ((kd(i, l) * z[j] * z[k] + kd(j, l) * z[i] * z[k] + kd(k, l) * z[i] * z[j]) * rg2 +
                      (gamma - 2.0) * z[i] * z[j] * z[k] * z[l] * rg4);
        h(i, j) = v;
    }
    return h;
}

KernelSample sample_kernel(const Vec3& z, double gamma) { return {z, kernel_matrix(z, gamma), kernel_c(z, gamma)}; }

}  // namespace landau
