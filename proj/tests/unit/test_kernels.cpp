#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <landau/coefficients.hpp>
#include <landau/convolution.hpp>
#include <landau/fields.hpp>
#include <landau/kernel_checks.hpp>
#include <landau/kernels.hpp>

using namespace landau;

namespace {

Vec3 random_point(std::mt19937_64& rng, double rmin, double rmax) {
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(rmin, rmax);
    Vec3 d{n(rng), n(rng), n(rng)};
    const double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    const double r = u(rng);
    return {d[0] * r / len, d[1] * r / len, d[2] * r / len};
}

// Oracle: a_ij written out from its definition, independent of the library.
double a_oracle(const Vec3& z, double gamma, int i, int j) {
    const double r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
    return ((i == j ? r2 : 0.0) - z[i] * z[j]) * std::pow(r2, gamma / 2.0);
}

double partial(const Vec3& z, int k, double h, const std::function<double(const Vec3&)>& f) {
    Vec3 p = z, m = z;
    p[k] += h;
    m[k] -= h;
    Vec3 p2 = z, m2 = z;
    p2[k] += 2 * h;
    m2[k] -= 2 * h;
    return (-f(p2) + 8 * f(p) - 8 * f(m) + f(m2)) / (12 * h);
}

}  // namespace

TEST(Kernels, MatrixMatchesDefinition) {
    std::mt19937_64 rng(3);
    for (double gamma : {0.0, 0.5, 1.0})
        for (int s = 0; s < 200; ++s) {
            const Vec3 z = random_point(rng, 0.1, 4.0);
            const Sym3 a = kernel_matrix(z, gamma);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) EXPECT_NEAR(a(i, j), a_oracle(z, gamma, i, j), 1e-12 * (1 + std::abs(a(i, j))));
        }
}

TEST(Kernels, ZeroAtOrigin) {
    const Sym3 a = kernel_matrix({0, 0, 0}, 0.5);
    for (double c : a.c) EXPECT_EQ(c, 0.0);
    EXPECT_EQ(kernel_c({0, 0, 0}, 0.5), 0.0);
    EXPECT_EQ(kernel_c({0, 0, 0}, 0.0), -6.0);
}

TEST(Kernels, DivergenceAndContractionAgainstFiniteDifferences) {
    std::mt19937_64 rng(5);
    const double h = 1e-3;
    for (double gamma : {0.0, 0.5, 1.0})
        for (int s = 0; s < 100; ++s) {
            const Vec3 z = random_point(rng, 0.5, 3.0);
            const Vec3 b = kernel_b(z, gamma);
            double c = 0.0;
            for (int i = 0; i < 3; ++i) {
                double bi = 0.0;
                for (int j = 0; j < 3; ++j) {
                    bi += partial(z, j, h, [&](const Vec3& p) { return a_oracle(p, gamma, i, j); });
                    c += partial(z, i, h, [&](const Vec3& p) {
                        return partial(p, j, h, [&](const Vec3& q) { return a_oracle(q, gamma, i, j); });
                    });
                }
                EXPECT_NEAR(b[i], bi, 1e-7 * (1 + std::abs(bi)));
            }
            EXPECT_NEAR(kernel_c(z, gamma), c, 1e-5 * std::abs(c));
        }
}

TEST(Kernels, GradientAndHessianAgainstFiniteDifferences) {
    std::mt19937_64 rng(9);
    const double h = 1e-3;
    for (double gamma : {0.0, 1.0})
        for (int s = 0; s < 50; ++s) {
            const Vec3 z = random_point(rng, 0.5, 3.0);
            for (int k = 0; k < 3; ++k) {
                const Sym3 g = kernel_gradient(z, gamma, k);
                for (auto [i, j] : kSymPairs) {
                    const double fd = partial(z, k, h, [&](const Vec3& p) { return a_oracle(p, gamma, i, j); });
                    EXPECT_NEAR(g(i, j), fd, 1e-7 * (1 + std::abs(fd)));
                }
                for (int l = 0; l < 3; ++l) {
                    const Sym3 H = kernel_hessian(z, gamma, k, l);
                    for (auto [i, j] : kSymPairs) {
                        const double fd = partial(z, l, h, [&](const Vec3& p) { return kernel_gradient(p, gamma, k)(i, j); });
                        EXPECT_NEAR(H(i, j), fd, 1e-6 * (1 + std::abs(fd)));
                    }
                }
            }
        }
}

TEST(Kernels, PositiveSemidefiniteWithNullDirection) {
    std::mt19937_64 rng(11);
    for (int s = 0; s < 500; ++s) {
        const Vec3 z = random_point(rng, 0.1, 5.0);
        const Vec3 xi = random_point(rng, 0.1, 5.0);
        const Sym3 a = kernel_matrix(z, 0.5);
        EXPECT_GE(a.quad(xi), -1e-12);
        const Vec3 az = a.apply(z);
        EXPECT_NEAR(az[0], 0.0, 1e-11);
        EXPECT_NEAR(az[1], 0.0, 1e-11);
        EXPECT_NEAR(az[2], 0.0, 1e-11);
    }
}

TEST(Convolution, FftMatchesDirectOnSmoothData) {
    GridSpec g;
    g.x_dims = 0;
    g.v_count = 12;
    g.v_extent = 4.0;
    const Field f = random_smooth_field(g, 21, false);
    for (double gamma : {0.0, 1.0}) {
        const auto a = coefficients(f, gamma, Engine::FFT);
        const auto b = coefficients(f, gamma, Engine::Direct);
        double num = 0, den = 0;
        for (int k = 0; k < 6; ++k)
            for (std::size_t p = 0; p < g.nv_total(); ++p) {
                num = std::max(num, std::abs(a.abar.comp[k][p] - b.abar.comp[k][p]));
                den = std::max(den, std::abs(b.abar.comp[k][p]));
            }
        EXPECT_LT(num / den, 1e-12);
    }
}

TEST(Convolution, LinearInDensity) {
    GridSpec g;
    g.x_dims = 0;
    g.v_count = 10;
    g.v_extent = 4.0;
    const Field f1 = random_smooth_field(g, 1, false);
    const Field f2 = random_smooth_field(g, 2, false);
    Field s = f1;
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = 2.0 * f1.values[i] - 3.0 * f2.values[i];
    const auto c1 = coefficients(f1, 0.5, Engine::FFT);
    const auto c2 = coefficients(f2, 0.5, Engine::FFT);
    const auto cs = coefficients(s, 0.5, Engine::FFT);
    for (std::size_t p = 0; p < g.nv_total(); ++p) {
        const double want = 2.0 * c1.cbar[p] - 3.0 * c2.cbar[p];
        EXPECT_NEAR(cs.cbar[p], want, 1e-11 * (1 + std::abs(want)));
    }
}

TEST(Convolution, CbarOfMaxwellianAtGammaZeroIsMinusSixMass) {
    // c = -6 for gamma = 0, so cbar = -6 * (discrete mass) everywhere.
    GridSpec g;
    g.x_dims = 0;
    g.v_count = 16;
    g.v_extent = 6.0;
    const Field f = maxwellian(g, 1.0);
    double mass = 0;
    for (double v : f.values) mass += v * g.cell_volume_v();
    const auto cf = coefficients(f, 0.0, Engine::FFT);
    for (std::size_t p = 0; p < g.nv_total(); ++p) EXPECT_NEAR(cf.cbar[p], -6.0 * mass, 1e-12);
}

TEST(KernelChecks, AllPassForSupportedGammas) {
    for (double gamma : {0.0, 0.5, 1.0}) {
        KernelCheckOptions o;
        o.samples = 2000;
        o.fd_samples = 200;
        o.conv_grid = 10;
        const auto r = verify_kernels(gamma, o);
        EXPECT_TRUE(r.passed()) << "gamma " << gamma;
        EXPECT_EQ(r.checks.size(), 7u);
    }
}
