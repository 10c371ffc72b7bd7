#include "landau/kernel_checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "landau/coefficients.hpp"
#include "landau/fields.hpp"
#include "landau/kernels.hpp"

namespace landau {

bool KernelCheckReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const KernelCheck& c) { return c.passed; });
}

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

KernelCheck finish(std::string name, double err, double tol, long long n) {
    return {std::move(name), err, tol, n, std::isfinite(err) && err <= tol};
}

// Relative when the reference is large, absolute below one.
double scaled(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// Fourth-order central stencils: (-1, 16, -30, 16, -1)/12 on the diagonal, the tensor
// product of (1, -8, 0, 8, -1)/12 for mixed pairs.
double fd_contraction(const Vec3& z, double gamma, double h) {
    static constexpr double d1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
    static constexpr double d2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto at = [&](int di, int dj) {
                Vec3 p = z;
                p[i] += di * h;
                p[j] += dj * h;
                return kernel_matrix(p, gamma)(i, j);
            };
            double acc = 0.0;
            if (i == j) {
                for (int a = 0; a < 5; ++a) acc += d2[a] * at(a - 2, 0);
            } else {
                for (int a = 0; a < 5; ++a)
                    for (int b = 0; b < 5; ++b)
                        if (d1[a] != 0.0 && d1[b] != 0.0) acc += d1[a] * d1[b] * at(a - 2, b - 2);
                acc /= 12.0;
            }
            s += acc / (12.0 * h * h);
        }
    return s;
}

}  // namespace

KernelCheckReport verify_kernels(double gamma, const KernelCheckOptions& opt) {
    KernelCheckReport rep;
    rep.gamma = gamma;
    rep.seed = opt.seed;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    auto draw = [&] { return Vec3{box(rng), box(rng), box(rng)}; };

    double e_null = 0.0, e_quad = 0.0, e_aniso = 0.0;
    for (int s = 0; s < opt.samples; ++s) {
        const Vec3 z = draw(), xi = draw(), vs = draw();
        const Sym3 a = kernel_matrix(z, gamma);
        const Vec3 az = a.apply(z);
        e_null = std::max(e_null, std::sqrt(dot(az, az)) / std::max(1.0, std::pow(std::sqrt(dot(z, z)), gamma + 3.0)));

        const double r = std::sqrt(dot(z, z));
        const double zx = r > 0.0 ? dot(z, xi) / r : 0.0;
        const double want = std::pow(r, gamma + 2.0) * (dot(xi, xi) - zx * zx);
        e_quad = std::max(e_quad, scaled(a.quad(xi), want));

        // v = xi, v_* = vs
        const Vec3 d = sub(xi, vs);
        const double vv = dot(xi, vs);
        const double want2 = abs_pow(d, gamma) * (dot(xi, xi) * dot(vs, vs) - vv * vv);
        e_aniso = std::max(e_aniso, scaled(kernel_matrix(d, gamma).quad(xi), want2));
    }
    rep.checks.push_back(finish("null_direction", e_null, 1e-10, opt.samples));
    rep.checks.push_back(finish("quadratic_form", e_quad, 1e-10, opt.samples));
    rep.checks.push_back(finish("anisotropy_identity", e_aniso, 1e-10, opt.samples));

    std::uniform_real_distribution<double> radius(0.5, 3.0), unit(-1.0, 1.0);
    double e_fd = 0.0;
    for (int s = 0; s < opt.fd_samples; ++s) {
        Vec3 dir{unit(rng), unit(rng), unit(rng)};
        const double n = std::sqrt(dot(dir, dir));
        if (n < 1e-3) {
            --s;
            continue;
        }
        const double r = radius(rng);
        const Vec3 z{dir[0] * r / n, dir[1] * r / n, dir[2] * r / n};
        const double c = kernel_c(z, gamma);
        e_fd = std::max(e_fd, std::abs(fd_contraction(z, gamma, opt.fd_step) - c) / std::abs(c));
    }
    rep.checks.push_back(finish("fd_contraction", e_fd, 1e-6, opt.fd_samples));

    GridSpec g;
    g.x_dims = 0;
    g.v_count = opt.conv_grid;
    g.v_extent = 4.0;
    const Field f = random_smooth_field(g, opt.seed, false);
    const CoefficientField fft = coefficients(f, gamma, Engine::FFT);
    const CoefficientField direct = coefficients(f, gamma, Engine::Direct);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < 6; ++k)
        for (std::size_t p = 0; p < g.nv_total(); ++p) {
            num = std::max(num, std::abs(fft.abar.comp[k][p] - direct.abar.comp[k][p]));
            den = std::max(den, std::abs(direct.abar.comp[k][p]));
        }
    double cnum = 0.0, cden = 0.0;
    for (std::size_t p = 0; p < g.nv_total(); ++p) {
        cnum = std::max(cnum, std::abs(fft.cbar[p] - direct.cbar[p]));
        cden = std::max(cden, std::abs(direct.cbar[p]));
    }
    rep.checks.push_back(finish("fft_vs_direct_abar", num / den, 1e-10, static_cast<long long>(g.nv_total())));
    rep.checks.push_back(finish("fft_vs_direct_cbar", cnum / cden, 1e-10, static_cast<long long>(g.nv_total())));

    // Unit mass at one node: abar(v) = a(v - v_q) on the whole grid.
    Field delta(g);
    const int q = opt.conv_grid / 2 - 1;
    const std::size_t qi = g.v_flat(q, q + 1, q);
    delta.values[qi] = 1.0 / g.cell_volume_v();
    const CoefficientField pm = coefficients(delta, gamma, Engine::FFT);
    const Vec3 vq = g.v_point(qi);
    double pnum = 0.0, pden = 0.0;
    for (std::size_t p = 0; p < g.nv_total(); ++p) {
        const Sym3 a = kernel_matrix(sub(g.v_point(p), vq), gamma);
        for (int k = 0; k < 6; ++k) {
            pnum = std::max(pnum, std::abs(pm.abar.comp[k][p] - a.c[k]));
            pden = std::max(pden, std::abs(a.c[k]));
        }
    }
    rep.checks.push_back(finish("point_mass_translate", pnum / pden, 1e-12, static_cast<long long>(g.nv_total())));
    return rep;
}

}  // namespace landau
