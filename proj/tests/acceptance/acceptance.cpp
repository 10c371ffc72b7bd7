// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <landau/boundary_decay.hpp>
#include <landau/coefficient_bounds.hpp>
#include <landau/coefficients.hpp>
#include <landau/exponential_weight.hpp>
#include <landau/fields.hpp>
#include <landau/kernel_checks.hpp>
#include <landau/kernels.hpp>
#include <landau/picard.hpp>
#include <landau/report_io.hpp>
#include <landau/solver.hpp>
#include <landau/weight_audit.hpp>

using namespace landau;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double norm(const Vec3& z) { return std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]); }

Vec3 random_direction(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Vec3 d{n(rng), n(rng), n(rng)};
    const double l = norm(d);
    return {d[0] / l, d[1] / l, d[2] / l};
}

Vec3 random_point(std::mt19937_64& rng, double rmin, double rmax) {
    const Vec3 d = random_direction(rng);
    const double r = std::uniform_real_distribution<double>(rmin, rmax)(rng);
    return {r * d[0], r * d[1], r * d[2]};
}

GridSpec vgrid(int n, double V) {
    GridSpec g;
    g.x_dims = 0;
    g.v_count = n;
    g.v_extent = V;
    return g;
}

const double kGammas[] = {0.0, 0.5, 1.0};

Outcome kernel_algebra() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (double gamma : kGammas)
        for (int s = 0; s < 10000; ++s) {
            const Vec3 z = random_point(rng, 0.05, 8.0);
            const Vec3 xi = random_direction(rng);
            const Sym3 a = kernel_matrix(z, gamma);
            const double r = norm(z);
            const double scale = std::pow(r, gamma + 2.0);
            const Vec3 az = a.apply(z);
            worst = std::max(worst, norm(az) / (scale * r));
            const double c = (z[0] * xi[0] + z[1] * xi[1] + z[2] * xi[2]) / r;
            worst = std::max(worst, std::abs(a.quad(xi) - scale * (1.0 - c * c)) / scale);
        }
    return {worst <= 1e-10, "max relative error " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome fd_contraction() {
    // Fourth-order central differences of the library's a_ij against -2(gamma+3)|z|^gamma.
    std::mt19937_64 rng(202);
    const double h = 1e-2;
    double worst = 0.0;
    for (double gamma : kGammas)
        for (int s = 0; s < 1000; ++s) {
            const Vec3 z = random_point(rng, 0.5, 3.0);
            double sum = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    auto at = [&](double di, double dj) {
                        Vec3 p = z;
                        p[static_cast<std::size_t>(i)] += di;
                        p[static_cast<std::size_t>(j)] += dj;
                        return kernel_matrix(p, gamma)(i, j);
                    };
                    const double w[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
                    const double o[4] = {-2.0, -1.0, 1.0, 2.0};
                    double d = 0.0;
                    if (i == j) {
                        d = (-at(2 * h, 0) + 16 * at(h, 0) - 30 * at(0, 0) + 16 * at(-h, 0) - at(-2 * h, 0)) / (12 * h * h);
                    } else {
                        for (int p = 0; p < 4; ++p)
                            for (int q = 0; q < 4; ++q) d += w[p] * w[q] * at(o[p] * h, o[q] * h);
                        d /= h * h;
                    }
                    sum += d;
                }
            const double want = -2.0 * (gamma + 3.0) * std::pow(norm(z), gamma);
            worst = std::max(worst, std::abs(sum - want) / std::abs(want));
        }
    return {worst <= 1e-6, "max relative error " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

Outcome anisotropy_identity() {
    std::mt19937_64 rng(303);
    double worst = 0.0;
    for (double gamma : kGammas)
        for (int s = 0; s < 10000; ++s) {
            const Vec3 v = random_point(rng, 0.0, 5.0);
            const Vec3 w = random_point(rng, 0.0, 5.0);
            const Vec3 z{v[0] - w[0], v[1] - w[1], v[2] - w[2]};
            const double lhs = kernel_matrix(z, gamma).quad(v);
            const double vw = v[0] * w[0] + v[1] * w[1] + v[2] * w[2];
            const double vv = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            const double ww = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
            const double rhs = std::pow(norm(z), gamma) * (vv * ww - vw * vw);
            const double scale = std::pow(norm(z), gamma) * vv * ww + 1.0;
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
    return {worst <= 1e-10, "max scaled error " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome convolution_engines() {
    const GridSpec g = vgrid(24, 6.0);
    const Field f = random_smooth_field(g, 11, false);
    double worst = 0.0;
    for (double gamma : {0.0, 1.0}) {
        const CoefficientField a = coefficients(f, gamma, Engine::FFT);
        const CoefficientField b = coefficients(f, gamma, Engine::Direct);
        double num = 0.0, den = 0.0, cn = 0.0, cd = 0.0;
        for (std::size_t p = 0; p < g.nv_total(); ++p) {
            for (int k = 0; k < 6; ++k) {
                num = std::max(num, std::abs(a.abar.comp[static_cast<std::size_t>(k)][p] - b.abar.comp[static_cast<std::size_t>(k)][p]));
                den = std::max(den, std::abs(b.abar.comp[static_cast<std::size_t>(k)][p]));
            }
            cn = std::max(cn, std::abs(a.cbar[p] - b.cbar[p]));
            cd = std::max(cd, std::abs(b.cbar[p]));
        }
        worst = std::max({worst, num / den, cn / cd});
    }
    // A point mass M/h^3 at node v0 must give abar(v) = M a(v - v0) at every node.
    const GridSpec s = vgrid(16, 4.0);
    const std::size_t q0 = s.v_flat(9, 6, 8);
    const Vec3 v0 = s.v_point(q0);
    Field delta(s);
    delta.values[q0] = 2.5 / s.cell_volume_v();
    double pm = 0.0;
    for (Engine e : {Engine::FFT, Engine::Direct}) {
        const SymField ab = abar(delta, 1.0, e);
        double scale = 0.0, err = 0.0;
        for (std::size_t p = 0; p < s.nv_total(); ++p) {
            const Vec3 v = s.v_point(p);
            const Sym3 want = kernel_matrix({v[0] - v0[0], v[1] - v0[1], v[2] - v0[2]}, 1.0);
            for (int k = 0; k < 6; ++k) {
                scale = std::max(scale, std::abs(2.5 * want.c[static_cast<std::size_t>(k)]));
                err = std::max(err, std::abs(ab.comp[static_cast<std::size_t>(k)][p] - 2.5 * want.c[static_cast<std::size_t>(k)]));
            }
        }
        pm = std::max(pm, err / scale);
    }
    return {worst <= 1e-10 && pm <= 1e-12,
            "FFT vs direct " + fmt("%.2e", worst) + " (tol 1e-10), point mass " + fmt("%.2e", pm) + " (tol 1e-12)"};
}

Outcome bound_stability() {
    double worst = 0.0;
    std::string where;
    bool finite = true;
    for (double gamma : {0.0, 1.0})
        for (int data = 0; data < 2; ++data) {
            std::vector<BoundReport> reps;
            for (int n : {32, 48}) {
                const GridSpec g = vgrid(n, 8.0);
                const Field f = data == 0 ? maxwellian(g, 1.0) : random_smooth_field(g, 5, false);
                reps.push_back(verify_coefficient_bounds(f, gamma, {}));
                finite = finite && reps.back().all_finite();
            }
            for (std::size_t k = 0; k < reps[0].entries.size(); ++k) {
                const double a = reps[0].entries[k].constant, b = reps[1].entries[k].constant;
                if (a == 0.0 && b == 0.0) continue;
                const double rel = std::abs(b - a) / std::max(std::abs(a), std::abs(b));
                if (rel > worst) {
                    worst = rel;
                    where = reps[0].entries[k].name + (data == 0 ? " maxwellian" : " random") + fmt(" gamma %g", gamma);
                }
            }
        }
    return {finite && worst < 0.1, "largest 32^3 -> 48^3 change " + fmt("%.2e", worst) + " at " + where + " (tol 0.1)"};
}

Outcome weight_audit() {
    long long cases = 0, violations = 0;
    const std::pair<double, Rational> params[] = {
        {0.0, Rational(1, 10)}, {0.5, Rational(1, 10)}, {1.0, Rational(1, 100)}, {1.0, Rational(1, 10)}};
    for (const auto& [gamma, eta] : params) {
        const AuditReport r = check_split_inequalities(WeightHierarchy::main(ModelParams::make(gamma, eta)));
        cases += r.total_cases;
        violations += r.total_violations;
    }
    return {violations == 0 && cases > 0,
            std::to_string(cases) + " cases enumerated, " + std::to_string(violations) + " violations"};
}

Outcome conservation() {
    // Anisotropic Gaussian plus an offset bump; V = 8 keeps the boundary flux below the discretisation error.
    auto data = [](const Vec3&, const Vec3& v) {
        return std::exp(-(v[0] * v[0] / 1.2 + v[1] * v[1] / 0.7 + v[2] * v[2] / 0.9) / 2.0) +
               0.3 * std::exp(-((v[0] - 1.0) * (v[0] - 1.0) + (v[1] + 0.5) * (v[1] + 0.5) + v[2] * v[2]) / 0.5);
    };
    const int ns[] = {16, 24, 32};
    double min_order = 1e300;
    std::string where;
    for (double gamma : {0.0, 1.0}) {
        std::vector<std::array<double, 5>> mom;
        std::vector<double> scale, hs;
        for (int n : ns) {
            const GridSpec g = vgrid(n, 8.0);
            const Field q = collision_operator(make_field(g, data), gamma, Engine::FFT);
            std::array<double, 5> m{};
            double sc = 0.0;
            for (std::size_t p = 0; p < g.nv_total(); ++p) {
                const Vec3 v = g.v_point(p);
                const double Q = q.values[p] * g.cell_volume_v();
                const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
                m[0] += Q;
                for (int k = 0; k < 3; ++k) m[static_cast<std::size_t>(k + 1)] += v[static_cast<std::size_t>(k)] * Q;
                m[4] += v2 * Q;
                sc += std::abs(Q) * (1.0 + v2);
            }
            mom.push_back(m);
            scale.push_back(sc);
            hs.push_back(g.hv());
        }
        for (std::size_t k = 0; k < 5; ++k) {
            bool roundoff = true;
            for (std::size_t r = 0; r < 3; ++r) roundoff = roundoff && std::abs(mom[r][k]) <= 1e-12 * scale[r];
            if (roundoff) continue;
            for (std::size_t r = 0; r + 1 < 3; ++r) {
                const double o = std::log(std::abs(mom[r][k]) / std::abs(mom[r + 1][k])) / std::log(hs[r] / hs[r + 1]);
                if (o < min_order) {
                    min_order = o;
                    where = fmt("gamma %g moment ", gamma) + (k == 0 ? "1" : k == 4 ? "|v|^2" : "v" + std::to_string(k - 1));
                }
            }
        }
    }
    return {min_order >= 1.7, "smallest pairwise order " + fmt("%.2f", min_order) + " (" + where + ", tol 1.7)"};
}

Outcome maximum_principle() {
    const GridSpec g = vgrid(16, 6.0);
    SolverConfig c;
    c.params = ModelParams::make(1.0, Rational(1, 10));
    c.weight = {1.0, 0.1};
    c.R = 5.0;
    c.scheme = Scheme::Explicit;
    const Field h = random_smooth_field(g, 21, false);
    const Field f0 = random_smooth_field(g, 22, false);
    const LinearizedOperator op(g, c, {h});
    Field G = prepare_initial(to_g(f0, c.weight, 0.0), c);
    op.apply_boundary(G);
    const double dt = op.stable_dt(c.weight.T0());
    const VelocityTable vt(g);
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
        const double t = s * dt;
        G = op.step(G, t, dt);
        const double d = c.weight.d(t + dt);
        double fmin = 0.0, fmax = 0.0;
        for (std::size_t p = 0; p < g.nv_total(); ++p) {
            const double F = G.values[p] * std::exp(-d * vt.bracket[p]);
            fmin = std::min(fmin, F);
            fmax = std::max(fmax, F);
        }
        worst = std::min(worst, fmin / fmax);
    }
    return {worst >= -1e-12 && 200 * dt <= c.weight.T0(),
            "min F / max F over 200 steps " + fmt("%.2e", worst) + " (dt " + fmt("%.3g", dt) + ", tol -1e-12)"};
}

double gronwall_constant(int n, double kappa) {
    const GridSpec g = vgrid(n, 6.0);
    SolverConfig c;
    c.params = ModelParams::make(0.0);
    c.weight = {1.0, kappa};
    c.R = 5.0;
    c.scheme = Scheme::IMEX;
    c.dt = 0.002;
    c.max_derivative_order = 1;
    c.compute_ledger = false;
    const Field f = maxwellian(g, 1e-2);
    const SolveResult r = solve_linearized(to_g(f, c.weight, 0.0), {maxwellian(g, 1.0)}, c, 0.25);
    return r.gronwall.holds ? r.gronwall.C_fit : std::nan("");
}

Outcome gronwall_shape() {
    const double a1 = gronwall_constant(24, 1.0), b1 = gronwall_constant(32, 1.0);
    const double a2 = gronwall_constant(24, 2.0), b2 = gronwall_constant(32, 2.0);
    const double spread = std::abs(a1 - b1) / std::max(std::abs(a1), std::abs(b1));
    const bool ok = std::isfinite(spread) && spread <= 0.2 && a2 <= a1 && b2 <= b1;
    return {ok, "C(24^3) " + fmt("%.3g", a1) + ", C(32^3) " + fmt("%.3g", b1) + ", spread " + fmt("%.3f", spread) +
                    " (tol 0.2); 2 kappa: " + fmt("%.3g", a2) + ", " + fmt("%.3g", b2)};
}

double decay_exponent(double gamma) {
    GridSpec g = vgrid(32, 8.0);
    SolverConfig c;
    c.params = ModelParams::make(gamma, Rational(1, 10));
    c.weight = {1.0, 1.0};
    c.scheme = Scheme::IMEX;
    c.max_derivative_order = 1;
    c.ledger_every = 4;
    const Field f = maxwellian(g, 1.0, 0.1, {0.0, 0.0, 0.0});
    const BoundaryDecayReport r = run_boundary_decay(to_g(f, c.weight, 0.0), {f}, c, 0.1, {4.0, 16.0 / 3.0});
    return r.fit_valid ? r.exponent : std::nan("");
}

Outcome boundary_term_decay() {
    const double e0 = decay_exponent(0.0), e1 = decay_exponent(1.0);
    return {e0 <= -0.8 && e1 < 0.0,
            "gamma 0: " + fmt("%.3g", e0) + " (tol -0.8), gamma 1: " + fmt("%.3g", e1) + " (tol < 0)"};
}

Outcome picard_contraction() {
    const GridSpec g = vgrid(16, 6.0);
    const ModelParams mp = ModelParams::make(0.0);
    const Field gi = to_g(maxwellian(g, 1e-2), {1.0, 1.0}, 0.0);
    BoundOptions bo;
    bo.max_order = 2;
    const double C = empirical_constant(verify_coefficient_bounds(maxwellian(g, 1.0), 0.0, bo));
    PicardParams p = select_parameters(gi, 1.0, mp, C);
    p.time_steps = 16;
    SolverConfig c;
    c.params = mp;
    c.R = 5.0;
    c.scheme = Scheme::IMEX;
    const PicardResult r = iterate(gi, p, c);
    double best = 1e300;
    for (const auto& e : r.history.entries)
        if (e.has_ratio && e.iteration <= 5) best = std::min(best, e.ratio);
    const ResidualOrder ro = residual_order(gi, p, c);
    return {best <= 0.9 && ro.order >= 0.8, "first ratios <= " + fmt("%.2e", best) + " (tol 0.9), residual order " +
                                                fmt("%.3f", ro.order) + " (tol 0.8), kappa " + fmt("%.3g", p.kappa) +
                                                ", T " + fmt("%.3g", p.T)};
}

Outcome determinism() {
    auto once = [] {
        const GridSpec g = vgrid(12, 6.0);
        Provenance pv;
        pv.config_hash = hex64(fnv1a64("acceptance"));
        pv.grid = g;
        BoundOptions bo;
        bo.samples = 64;
        bo.seed = 77;
        KernelCheckOptions ko;
        ko.samples = 500;
        ko.fd_samples = 50;
        ko.conv_grid = 8;
        ko.seed = 77;
        SolverConfig c;
        c.params = ModelParams::make(0.5);
        c.R = 5.0;
        c.scheme = Scheme::IMEX;
        c.max_derivative_order = 1;
        const Field f = random_smooth_field(g, 77, false);
        const SolveResult sr = solve_linearized(to_g(f, c.weight, 0.0), {f}, c, 0.02);
        return report_json(verify_coefficient_bounds(f, 0.5, bo), pv) + report_json(verify_kernels(0.5, ko), pv) +
               report_json(sr.energy, pv) + report_json(sr.ledger, pv) + energy_csv(sr.energy);
    };
    const std::string a = once(), b = once();
    return {a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion all[] = {
        {"kernel algebra", kernel_algebra},
        {"kernel contraction vs finite differences", fd_contraction},
        {"anisotropy identity", anisotropy_identity},
        {"convolution engines", convolution_engines},
        {"coefficient bound stability", bound_stability},
        {"weight-inequality audit", weight_audit},
        {"conservation", conservation},
        {"maximum principle", maximum_principle},
        {"Gronwall shape", gronwall_shape},
        {"boundary-term decay", boundary_term_decay},
        {"Picard contraction", picard_contraction},
        {"determinism", determinism},
    };
    int failed = 0, k = 0;
    for (const auto& c : all) {
        ++k;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", k, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %d criteria passed\n", k - failed, k);
    return failed == 0 ? 0 : 1;
}
