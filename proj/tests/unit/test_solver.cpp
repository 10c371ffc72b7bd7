#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include <landau/boundary_decay.hpp>
#include <landau/coefficients.hpp>
#include <landau/fields.hpp>
#include <landau/solver.hpp>
#include <landau/term_ledger.hpp>

using namespace landau;

namespace {

GridSpec vgrid(int n = 12, double V = 6.0) {
    GridSpec g;
    g.x_dims = 0;
    g.v_count = n;
    g.v_extent = V;
    return g;
}

SolverConfig base_config(double gamma = 0.0) {
    SolverConfig c;
    c.params = ModelParams::make(gamma);
    c.weight = {1.0, 1.0};
    c.R = 5.0;
    c.max_derivative_order = 1;
    return c;
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace

TEST(Solver, ZeroInZeroOut) {
    const GridSpec g = vgrid();
    const Field h = maxwellian(g, 1.0);
    const Field r = rhs_linearized(Field(g), h, base_config(), 0.0);
    for (double v : r.values) EXPECT_EQ(v, 0.0);
}

TEST(Solver, QuadraticDataMatchesContinuousOperator) {
    // With d -> 0 and eps = 0 the operator is abar:D^2 G - cbar G - kappa <v> G,
    // and the second differences of a quadratic are exact on every offset.
    const GridSpec g = vgrid(16, 6.0);
    const Field h = maxwellian(g, 1.0);
    SolverConfig c = base_config(0.5);
    c.epsilon = 0.0;
    c.weight = {1e-13, 1.0};
    const Field G = make_field(g, [](const Vec3&, const Vec3& v) {
        return 3.0 + v[0] - 0.5 * v[1] + v[0] * v[0] + 0.3 * v[0] * v[1] - 0.7 * v[1] * v[2] + 2.0 * v[2] * v[2];
    });
    const double H[3][3] = {{2.0, 0.3, 0.0}, {0.3, 0.0, -0.7}, {0.0, -0.7, 4.0}};
    const Field r = rhs_linearized(G, h, c, 0.0);
    const CoefficientField cf = coefficients(h, 0.5, Engine::FFT);
    int checked = 0;
    for (std::size_t p = 0; p < g.nv_total(); ++p) {
        const Vec3 v = g.v_point(p);
        if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] > 1.6) continue;
        const Sym3 A = cf.abar.at(p);
        double want = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) want += A(i, j) * H[i][j];
        want -= (cf.cbar[p] + japanese_bracket(v)) * G.values[p];
        EXPECT_NEAR(r.values[p], want, 1e-10 * (1.0 + std::abs(want)));
        ++checked;
    }
    EXPECT_GT(checked, 10);
}

TEST(Solver, PureDampedTransportWithoutCollisions) {
    GridSpec g = vgrid(8, 6.0);
    g.x_dims = 1;
    g.x_count = 8;
    SolverConfig c = base_config();
    c.epsilon = 0.0;
    const Field G = make_field(g, [](const Vec3& x, const Vec3&) { return 2.0 + std::sin(x[0]); });
    const Field r = rhs_linearized(G, Field(g), c, 0.0);
    const auto mask = interior_mask(g, c.R);
    const double hx = g.hx();
    for (std::size_t xi = 0; xi < g.nx_total(); ++xi)
        for (std::size_t p = 0; p < g.nv_total(); ++p) {
            if (!mask[p]) {
                EXPECT_EQ(r.at(xi, p), 0.0);
                continue;
            }
            const Vec3 v = g.v_point(p);
            const std::size_t xm = (xi + g.nx_total() - 1) % g.nx_total(), xp = (xi + 1) % g.nx_total();
            const double dx = v[0] > 0 ? (G.at(xi, p) - G.at(xm, p)) / hx : (G.at(xp, p) - G.at(xi, p)) / hx;
            const double want = -v[0] * dx - c.weight.kappa * japanese_bracket(v) * G.at(xi, p);
            EXPECT_NEAR(r.at(xi, p), want, 1e-12 * (1.0 + std::abs(want)));
        }
}

TEST(Solver, ExplicitStepHasLocalOrderTwo) {
    const GridSpec g = vgrid();
    const Field h = maxwellian(g, 1.0);
    const SolverConfig c = base_config();
    const Field G = prepare_initial(maxwellian(g, 1e-2), c);
    LinearizedOperator op(g, c, {h});
    const double dt = op.stable_dt(0.1);
    auto defect = [&](double k) {
        const Field one = op.step(G, 0.0, k);
        const Field two = op.step(op.step(G, 0.0, k / 2), k / 2, k / 2);
        return max_abs_diff(one, two);
    };
    const double e1 = defect(dt), e2 = defect(dt / 2);
    EXPECT_GT(e1 / e2, 3.5);
    EXPECT_LT(e1 / e2, 4.5);
    EXPECT_EQ(max_abs_diff(op.step(G, 0.0, 0.0), G), 0.0);
}

TEST(Solver, SolveIsLinearInInitialData) {
    const GridSpec g = vgrid();
    const Field h = maxwellian(g, 1.0);
    SolverConfig c = base_config();
    c.compute_ledger = false;
    const Field a = to_g(maxwellian(g, 1e-2), c.weight, 0.0);
    const Field b = to_g(random_smooth_field(g, 4, false), c.weight, 0.0);
    Field s = a;
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = 2.0 * a.values[i] - 0.5 * b.values[i];
    const auto ra = solve_linearized(a, {h}, c, 0.05).trajectory.back();
    const auto rb = solve_linearized(b, {h}, c, 0.05).trajectory.back();
    const auto rs = solve_linearized(s, {h}, c, 0.05).trajectory.back();
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < rs.values.size(); ++i) {
        const double want = 2.0 * ra.values[i] - 0.5 * rb.values[i];
        scale = std::max(scale, std::abs(want));
        err = std::max(err, std::abs(rs.values[i] - want));
    }
    EXPECT_LT(err, 1e-10 * scale);
}

class Positivity : public ::testing::TestWithParam<Scheme> {};

TEST_P(Positivity, FStaysNonnegative) {
    const GridSpec g = vgrid();
    SolverConfig c = base_config(1.0);
    c.params = ModelParams::make(1.0, Rational(1, 10));
    c.scheme = GetParam();
    c.compute_ledger = false;
    const Field f = random_smooth_field(g, 8, false);
    const auto r = solve_linearized(to_g(f, c.weight, 0.0), {f}, c, 0.1);
    EXPECT_TRUE(r.stats.positivity_ok);
    EXPECT_GE(r.stats.min_F_ratio, -1e-12);
    for (const Field& G : r.trajectory)
        for (double v : G.values) EXPECT_GE(v, -1e-12 * G.max_abs());
}

INSTANTIATE_TEST_SUITE_P(Schemes, Positivity, ::testing::Values(Scheme::Explicit, Scheme::IMEX));

TEST(Solver, ZeroHorizonReturnsPreparedData) {
    const GridSpec g = vgrid();
    const SolverConfig c = base_config();
    const Field gi = to_g(maxwellian(g, 1e-2), c.weight, 0.0);
    const auto r = solve_linearized(gi, {maxwellian(g, 1.0)}, c, 0.0);
    ASSERT_EQ(r.trajectory.size(), 1u);
    EXPECT_EQ(r.trajectory[0].values, prepare_initial(gi, c).values);
    EXPECT_EQ(r.stats.steps, 0);
}

TEST(Solver, ZeroDataGivesZeroTrajectoryAndLedger) {
    const GridSpec g = vgrid();
    const auto r = solve_linearized(Field(g), {maxwellian(g, 1.0)}, base_config(), 0.05);
    for (const Field& G : r.trajectory)
        for (double v : G.values) EXPECT_EQ(v, 0.0);
    ASSERT_FALSE(r.ledger.empty());
    for (const auto& row : r.ledger.rows)
        for (double v : row.values) EXPECT_EQ(v, 0.0);
}

TEST(Solver, DampingTermHasGoodSign) {
    const GridSpec g = vgrid();
    const CoefficientField cf = coefficients(random_smooth_field(g, 2, false), 0.5, Engine::FFT);
    for (unsigned seed = 1; seed < 5; ++seed) {
        Field G = random_smooth_field(g, seed, false);
        for (std::size_t i = 0; i < G.values.size(); ++i) G.values[i] *= (i % 3 == 0 ? -1.0 : 1.0);
        EXPECT_LE(damping_term(G, cf, 0.7), 0.0);
    }
}

TEST(Ledger, ManifestHasOneSlotPerFunctional) {
    const auto& m = ledger_manifest();
    const std::set<std::string> expected{"A1",   "A2", "A3",   "B1",   "B2",   "B3",   "B4",   "B5",   "T1",
                                         "T2",   "T3_1", "T3_2", "T3_3", "T4", "T5_1", "T5_2", "T6_1", "T6_2"};
    EXPECT_EQ(std::set<std::string>(m.begin(), m.end()), expected);
    EXPECT_EQ(m.size(), expected.size());
    for (const auto& n : m) EXPECT_EQ(is_boundary_term(n), n[0] == 'B');
}

TEST(Ledger, EntriesNonnegativeAndBoundaryFreeAtOrderZero) {
    const GridSpec g = vgrid();
    SolverConfig c = base_config();
    const Field f = maxwellian(g, 1e-2);
    const auto r = solve_linearized(to_g(f, c.weight, 0.0), {maxwellian(g, 1.0)}, c, 0.05);
    EXPECT_TRUE(r.ledger.all_nonnegative());
    for (const auto& row : r.ledger.rows) {
        if (row.index.order() != 0) continue;
        for (std::size_t k = 0; k < r.ledger.manifest.size(); ++k)
            if (is_boundary_term(r.ledger.manifest[k])) EXPECT_EQ(row.values[k], 0.0) << r.ledger.manifest[k];
    }
}

TEST(Gronwall, FitRecoversExponentialRate) {
    std::vector<double> t, y;
    for (int k = 0; k <= 10; ++k) {
        t.push_back(0.1 * k);
        y.push_back(2.0 * std::exp(1.5 * 0.1 * k));
    }
    const auto fit = fit_gronwall(t, y);
    EXPECT_NEAR(fit.C_fit, 3.0, 1e-12);
    EXPECT_NEAR(fit.C_envelope, 3.0, 1e-12);
    EXPECT_TRUE(fit.holds);
    const auto zero = fit_gronwall({0.0, 1.0}, {0.0, 0.0});
    EXPECT_TRUE(zero.holds);
}

TEST(Solver, StrongerDampingShrinksXTerm) {
    const GridSpec g = vgrid();
    SolverConfig c = base_config();
    c.compute_ledger = false;
    const Field f = maxwellian(g, 1e-2);
    const Field h = maxwellian(g, 1.0);
    const auto r1 = solve_linearized(to_g(f, c.weight, 0.0), {h}, c, 0.1);
    c.weight.kappa = 2.0;
    const auto r2 = solve_linearized(to_g(f, c.weight, 0.0), {h}, c, 0.1);
    EXPECT_LE(r2.energy.X_T, r1.energy.X_T * (1 + 1e-12));
}

TEST(Solver, RejectsBadConfigs) {
    const GridSpec g = vgrid();
    SolverConfig c = base_config();
    c.R = 5.5;
    EXPECT_THROW(c.validate(g), std::invalid_argument);
    c = base_config();
    c.epsilon = -1.0;
    EXPECT_THROW(c.validate(g), std::invalid_argument);
    c = base_config();
    EXPECT_THROW(solve_linearized(Field(g), {maxwellian(g, 1.0)}, c, 0.6), std::invalid_argument);
}

TEST(BoundaryDecay, SyntheticInverseLawGivesMinusOne) {
    std::vector<std::pair<double, TermLedger>> runs;
    for (double R : {2.0, 4.0, 8.0}) {
        TermLedger L;
        L.manifest = ledger_manifest();
        LedgerRow row;
        row.index = MultiIndex::v(0);
        row.values.assign(L.manifest.size(), 0.0);
        for (std::size_t k = 0; k < L.manifest.size(); ++k)
            if (is_boundary_term(L.manifest[k])) row.values[k] = (k + 1.0) / R;
        L.rows.push_back(row);
        runs.emplace_back(R, L);
    }
    const auto r = boundary_decay_audit(runs, ModelParams::make(0.0));
    EXPECT_TRUE(r.fit_valid);
    EXPECT_NEAR(r.exponent, -1.0, 1e-12);
    EXPECT_DOUBLE_EQ(r.expected_exponent, -1.0);
    EXPECT_THROW(boundary_decay_audit({runs[0]}, ModelParams::make(0.0)), std::invalid_argument);
}
