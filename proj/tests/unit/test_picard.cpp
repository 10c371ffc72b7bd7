#include <gtest/gtest.h>

#include <cmath>

#include <landau/exponential_weight.hpp>
#include <landau/fields.hpp>
#include <landau/norms.hpp>
#include <landau/picard.hpp>

using namespace landau;

namespace {

GridSpec vgrid() {
    GridSpec g;
    g.x_dims = 0;
    g.v_count = 12;
    g.v_extent = 6.0;
    g.max_derivative_order = 4;
    return g;
}

SolverConfig imex_config() {
    SolverConfig c;
    c.params = ModelParams::make(0.0);
    c.R = 5.0;
    c.scheme = Scheme::IMEX;
    return c;
}

}  // namespace

TEST(PicardParams, TimeHorizonScalesInverselyWithM0) {
    const GridSpec g = vgrid();
    const Field tiny = to_g(maxwellian(g, 1e-30), {1.0, 1.0}, 0.0);
    const auto mp = ModelParams::make(0.0);
    SelectOptions o;
    o.M0_bound = 1.0;
    const PicardParams a = select_parameters(tiny, 8.0, mp, 2.0, o);
    o.M0_bound = 2.0;
    const PicardParams b = select_parameters(tiny, 8.0, mp, 2.0, o);
    // d0 = 8 keeps 2 ln 2/(C M0) below T0 = d0/(4 C M0).
    EXPECT_NEAR(a.T, 2.0 * std::log(2.0) / 2.0, 1e-15);
    EXPECT_LT(a.T, a.T0);
    EXPECT_NEAR(b.T, a.T / 2.0, 1e-15);
    EXPECT_DOUBLE_EQ(a.M_h, 2.0);
    EXPECT_DOUBLE_EQ(a.kappa, 4.0);
    EXPECT_DOUBLE_EQ(b.kappa, 2.0 * a.kappa);
    EXPECT_DOUBLE_EQ(a.T0, 8.0 / (2.0 * a.kappa));
}

TEST(PicardParams, RadiusBoundFormula) {
    const GridSpec g = vgrid();
    const Field gi = to_g(maxwellian(g, 1e-2), {1.0, 1.0}, 0.0);
    for (auto [gamma, eta] : {std::pair{0.0, Rational(1, 10)}, std::pair{1.0, Rational(1, 10)}}) {
        const auto mp = ModelParams::make(gamma, eta);
        SelectOptions o;
        o.norm_order = 1;
        o.epsilon = 0.05;
        const PicardParams p = select_parameters(gi, 1.0, mp, 3.0, o);
        const double y = y_norm(gi, WeightHierarchy::main(mp), 1);
        const double expo = gamma == 1.0 ? 0.1 : 1.0;
        const double want = std::log(2.0) + (-2.0 * std::log(0.05) + std::log(y * y + 0.05) + p.kappa * p.T) / expo;
        EXPECT_NEAR(p.log_R_min, want, 1e-12 * std::abs(want));
    }
}

TEST(PicardParams, RejectsBadInputs) {
    const GridSpec g = vgrid();
    const Field gi = maxwellian(g, 1.0);
    const auto mp = ModelParams::make(0.0);
    EXPECT_THROW(select_parameters(gi, 0.0, mp, 1.0), std::invalid_argument);
    EXPECT_THROW(select_parameters(gi, 1.0, mp, -1.0), std::invalid_argument);
    Field neg = gi;
    neg.values[0] = -1.0;
    EXPECT_THROW(select_parameters(neg, 1.0, mp, 1.0), std::invalid_argument);
}

TEST(ContractionNormTest, ZeroAndFallback) {
    const GridSpec g = vgrid();
    const auto n = contraction_norm({Field(g), Field(g, 1.0)}, ModelParams::make(0.0));
    EXPECT_EQ(n.value, 0.0);
    EXPECT_EQ(n.order, 4);
    EXPECT_FALSE(n.fallback);
    GridSpec g2 = g;
    g2.max_derivative_order = 2;
    const auto m = contraction_norm({Field(g2)}, ModelParams::make(0.0));
    EXPECT_EQ(m.order, 2);
    EXPECT_TRUE(m.fallback);
}

TEST(ContractionNormTest, BaseWeightIsTenAndBelowMainEnergy) {
    const auto mp = ModelParams::make(0.0);
    EXPECT_EQ(WeightHierarchy::contraction(mp).exact({}), Rational(10));
    const GridSpec g = vgrid();
    Field a = maxwellian(g, 1.0);
    Field b = a;
    b.time = 0.5;
    const double small = contraction_norm({a, b}, mp).value;
    const double big = energy_report({a, b}, WeightHierarchy::main(mp), 4).E_T;
    EXPECT_LE(small, big);
}

TEST(Picard, ZeroDataConvergesImmediately) {
    const GridSpec g = vgrid();
    const auto mp = ModelParams::make(0.0);
    const PicardParams p = select_parameters(Field(g), 1.0, mp, 2.0);
    EXPECT_DOUBLE_EQ(p.T, p.T0);
    EXPECT_DOUBLE_EQ(p.kappa, 2.0);
    const PicardResult r = iterate(Field(g), p, imex_config());
    EXPECT_TRUE(r.history.converged);
    ASSERT_EQ(r.history.entries.size(), 1u);
    EXPECT_EQ(r.history.entries[0].w_norm, 0.0);
}

TEST(Picard, ContractsOnSmallData) {
    const GridSpec g = vgrid();
    const SolverConfig c = imex_config();
    const Field gi = to_g(maxwellian(g, 1e-2), {1.0, 1.0}, 0.0);
    SelectOptions o;
    o.norm_order = 1;
    PicardParams p = select_parameters(gi, 1.0, c.params, 50.0, o);
    p.time_steps = 8;
    const PicardResult r = iterate(gi, p, c);
    EXPECT_TRUE(r.history.converged);
    ASSERT_GE(r.history.entries.size(), 2u);
    EXPECT_TRUE(r.history.entries[1].has_ratio);
    EXPECT_LE(r.history.entries[1].ratio, 0.9);
    EXPECT_EQ(r.trajectory.size(), 9u);
}

TEST(Picard, BudgetViolationHalvesTheHorizon) {
    // Narrow data sits inside the cutoff ball, so the integrated X-part pushes the
    // localised energy past 2 M0 on long horizons.
    const GridSpec g = vgrid();
    const SolverConfig c = imex_config();
    const Field gi = to_g(maxwellian(g, 1e-2, 0.1, {0.0, 0.0, 0.0}), {1.0, 1.0}, 0.0);
    SelectOptions o;
    o.norm_order = 1;
    PicardParams p = select_parameters(gi, 1.0, c.params, 1.0, o);
    p.kappa = 0.01;
    p.T0 = 50.0;
    p.T = 2.0;
    const PicardResult r = iterate(gi, p, c);
    EXPECT_EQ(r.history.restarts, 3);
    EXPECT_DOUBLE_EQ(r.params.T, 0.25);
    EXPECT_TRUE(r.history.converged);

    p.max_restarts = 1;
    try {
        (void)iterate(gi, p, c);
        FAIL() << "expected a budget abort";
    } catch (const PicardAbort& a) {
        EXPECT_EQ(a.reason, PicardAbort::Reason::Budget);
        EXPECT_EQ(a.history.restarts, 1);
    }
}

TEST(Picard, RejectsDataAboveM0) {
    const GridSpec g = vgrid();
    const Field gi = to_g(maxwellian(g, 1e-2), {1.0, 1.0}, 0.0);
    SelectOptions o;
    o.norm_order = 1;
    PicardParams p = select_parameters(gi, 1.0, ModelParams::make(0.0), 1.0, o);
    p.M0 *= 0.5;
    EXPECT_THROW(iterate(gi, p, imex_config()), std::invalid_argument);
}

TEST(Picard, EmpiricalConstantIsSafetyTimesMax) {
    BoundReport r;
    BoundEntry a, b;
    a.constant = 2.0;
    b.constant = 5.0;
    r.entries = {a, b};
    EXPECT_DOUBLE_EQ(empirical_constant(r), 20.0);
    EXPECT_DOUBLE_EQ(empirical_constant(r, 1.0), 5.0);
    EXPECT_THROW(empirical_constant(BoundReport{}), std::invalid_argument);
}
