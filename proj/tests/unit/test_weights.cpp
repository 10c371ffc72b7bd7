#include <gtest/gtest.h>

#include <set>

#include <landau/multiindex.hpp>
#include <landau/weight_audit.hpp>
#include <landau/weights.hpp>

using namespace landau;

namespace {

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST(MultiIndex, EnumerationCountMatchesStarsAndBars) {
    for (int order = 0; order <= 6; ++order) {
        EXPECT_EQ(static_cast<long long>(enumerate_indices(order).size()), binomial(order + 6, 6));
        EXPECT_EQ(static_cast<long long>(enumerate_indices(order, 0u).size()), binomial(order + 3, 3));
        EXPECT_EQ(static_cast<long long>(enumerate_indices(order, 1u).size()), binomial(order + 4, 4));
    }
}

TEST(MultiIndex, EnumerationIsSortedUniqueAndRespectsMask) {
    const auto idx = enumerate_indices(4, 0b01u);
    std::set<MultiIndex> seen(idx.begin(), idx.end());
    EXPECT_EQ(seen.size(), idx.size());
    for (std::size_t i = 1; i < idx.size(); ++i) EXPECT_LT(idx[i - 1], idx[i]);
    for (const auto& m : idx) {
        EXPECT_EQ(m.alpha[1], 0);
        EXPECT_EQ(m.alpha[2], 0);
        EXPECT_LE(m.order(), 4);
    }
}

TEST(MultiIndex, TuplesWithSum) {
    for (int n = 0; n < 8; ++n) EXPECT_EQ(tuples_with_sum(n), binomial(n + 2, 2));
}

TEST(MultiIndex, ArithmeticAndLabel) {
    const MultiIndex a = MultiIndex::x(0, 2) + MultiIndex::v(2);
    EXPECT_EQ(a.abs_alpha(), 2);
    EXPECT_EQ(a.abs_beta(), 1);
    EXPECT_TRUE(a.contains(MultiIndex::v(2)));
    EXPECT_FALSE(a.contains(MultiIndex::v(1)));
    EXPECT_EQ((a - MultiIndex::x(0)).abs_alpha(), 1);
    EXPECT_EQ(a.label(), "a2.0.0_b0.0.1");
}

TEST(Weights, BaseValues) {
    const auto p = ModelParams::make(0.0);
    EXPECT_EQ(WeightHierarchy::main(p).exact({}), Rational(20));
    EXPECT_EQ(WeightHierarchy::contraction(p).exact({}), Rational(10));
    // One x-derivative costs 3/2, one v-derivative 1/2.
    EXPECT_EQ(WeightHierarchy::main(p).exact(MultiIndex::x(0)), Rational(37, 2));
    EXPECT_EQ(WeightHierarchy::main(p).exact(MultiIndex::v(1)), Rational(39, 2));
}

TEST(Weights, DeltaOnlyAtGammaOne) {
    EXPECT_EQ(ModelParams::make(0.5, Rational(1, 10)).delta(), Rational(0));
    EXPECT_EQ(ModelParams::make(1.0, Rational(1, 100)).delta(), Rational(1, 100));
    const auto h = WeightHierarchy::main(ModelParams::make(1.0, Rational(1, 10)));
    MultiIndex m = MultiIndex::x(0) + MultiIndex::v(1, 2);
    // 20 - (3/2 + 1/10) - 2 (1/2 + 1/10)
    EXPECT_EQ(h.exact(m), Rational(20) - Rational(16, 10) - Rational(12, 10));
}

TEST(Weights, WeightsDecreaseWithOrder) {
    for (double gamma : {0.0, 1.0}) {
        const auto h = WeightHierarchy::main(ModelParams::make(gamma, Rational(1, 10)));
        for (const auto& m : enumerate_indices(9)) {
            for (int k = 0; k < 3; ++k) {
                EXPECT_GT(h.exact(m), h.exact(m + MultiIndex::x(k)));
                EXPECT_GT(h.exact(m), h.exact(m + MultiIndex::v(k)));
            }
        }
    }
}

TEST(Weights, ParseRational) {
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("-2"), Rational(-2));
    EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
    EXPECT_EQ(parse_rational("1/10"), Rational(1, 10));
    EXPECT_EQ(parse_rational("1e-2"), Rational(1, 100));
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Weights, RejectsInvalidParameters) {
    EXPECT_THROW(ModelParams::make(-0.1).validate(), std::invalid_argument);
    EXPECT_THROW(ModelParams::make(1.5).validate(), std::invalid_argument);
    EXPECT_THROW(ModelParams::make(1.0, Rational(0)).validate(), std::invalid_argument);
}

struct AuditCase {
    double gamma;
    Rational eta;
};

class AuditSweep : public ::testing::TestWithParam<AuditCase> {};

TEST_P(AuditSweep, NoViolationsAtOrderTen) {
    const auto [gamma, eta] = GetParam();
    const AuditReport r = check_split_inequalities(WeightHierarchy::main(ModelParams::make(gamma, eta)));
    EXPECT_EQ(r.total_violations, 0);
    EXPECT_GT(r.total_cases, 0);
    long long sum = 0;
    for (const auto& c : r.cases) {
        sum += c.count;
        if (c.has_slack) EXPECT_GE(c.min_slack, Rational(0)) << c.proposition << " " << c.name;
    }
    EXPECT_EQ(sum, r.total_cases);
}

INSTANTIATE_TEST_SUITE_P(Hierarchies, AuditSweep,
                         ::testing::Values(AuditCase{0.0, Rational(1, 10)}, AuditCase{0.5, Rational(1, 10)},
                                           AuditCase{1.0, Rational(1, 100)}, AuditCase{1.0, Rational(1, 10)}));

TEST(Audit, DetectsAFalseClaim) {
    using namespace audit;
    // w(a, b') >= w(a, b) + 1 for |b'| = |b| - 1 is false: dropping a v-derivative gains only 1/2.
    CaseSpec bad{"X", "false", "", "", {eq(var(A1), var(A)), eq(var(B1), var(B) - 1)}, {{{1, 1}}, {{1, 0}}, Rational(1)}};
    const AuditReport r = check_split_inequalities(WeightHierarchy::main(ModelParams::make(0.0)), {bad});
    EXPECT_GT(r.total_violations, 0);
    ASSERT_FALSE(r.violations.empty());
    EXPECT_EQ(r.violations.front().lhs + Rational(1, 2), r.violations.front().rhs);
}

TEST(Audit, EqualityClaimsAreChecked) {
    using namespace audit;
    // Trading one x-derivative for a v-derivative changes the weight by exactly 1 when delta = 0.
    CaseSpec swap{"X", "swap", "", "",
                  {eq(var(A1) + 1, var(A)), eq(var(B1), var(B) + 1), le(var(A), Expr{} + 3)},
                  {{{1, 1}}, {{1, 0}}, Rational(1), 0, Rel::EQ}};
    const AuditReport r = check_split_inequalities(WeightHierarchy::main(ModelParams::make(0.0)), {swap});
    EXPECT_EQ(r.total_violations, 0);
    EXPECT_GT(r.total_cases, 0);
}
