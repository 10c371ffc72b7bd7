#include "landau/weight_audit.hpp"

#include <algorithm>

namespace landau {
namespace audit {

Expr var(Var v) {
    Expr e;
    e.coeff[v] = 1;
    return e;
}

Expr operator+(Expr a, const Expr& b) {
    for (int i = 0; i < kVarCount; ++i) a.coeff[i] += b.coeff[i];
    a.constant += b.constant;
    return a;
}

Expr operator-(Expr a, const Expr& b) {
    for (int i = 0; i < kVarCount; ++i) a.coeff[i] -= b.coeff[i];
    a.constant -= b.constant;
    return a;
}

Expr operator+(Expr a, int k) {
    a.constant += k;
    return a;
}

Expr operator-(Expr a, int k) {
    a.constant -= k;
    return a;
}

Expr operator*(int k, Expr a) {
    for (auto& c : a.coeff) c *= k;
    a.constant *= k;
    return a;
}

Constraint le(const Expr& a, const Expr& b) { return {a - b, Rel::LE}; }
Constraint ge(const Expr& a, const Expr& b) { return {a - b, Rel::GE}; }
Constraint eq(const Expr& a, const Expr& b) { return {a - b, Rel::EQ}; }

namespace {

Expr k(int c) {
    Expr e;
    e.constant = c;
    return e;
}

const Expr a = var(A), b = var(B), a1 = var(A1), b1 = var(B1), a2 = var(A2), b2 = var(B2), a3 = var(A3),
           b3 = var(B3);
const Expr m = a + b;

Claim ge_claim(std::vector<WeightTerm> lhs, std::vector<WeightTerm> rhs, Rational c, int dm) {
    return {std::move(lhs), std::move(rhs), c, dm, Rel::GE};
}

Claim eq_claim(std::vector<WeightTerm> lhs, std::vector<WeightTerm> rhs, Rational c, int dm) {
    return {std::move(lhs), std::move(rhs), c, dm, Rel::EQ};
}

std::vector<CaseSpec> build_cases() {
    std::vector<CaseSpec> cs;
    auto add = [&](std::string prop, std::string name, std::string cond, std::string claim_text,
                   std::vector<Constraint> cons, Claim claim) {
        cs.push_back({std::move(prop), std::move(name), std::move(cond), std::move(claim_text), std::move(cons),
                      std::move(claim)});
    };
    const Expr ord1 = a1 + b1;

    add("T1", "commutator", "|b|>=1, |a'|<=|a|+1, |b'|<=|b|-1", "w(a',b') >= w(a,b) - 1",
        {ge(b, k(1)), le(a1, a + 1), le(b1, b - 1), le(ord1, k(10))}, ge_claim({{1, 1}}, {{1, 0}}, -1, 0));

    add("T2", "lower v-order", "a'=a, |b'|<=|b|-1", "w(a,b') >= w(a,b)", {eq(a1, a), le(b1, b - 1)},
        ge_claim({{1, 1}}, {{1, 0}}, 0, 0));

    {
        std::vector<Constraint> base{le(a1 + a2 + a3, 2 * a),   le(b1 + b2 + b3, 2 * b + 2), eq(a3 + b3, m),
                                     ge(ord1, k(2)),             le(ord1, m),                 le(ord1, k(8)),
                                     le(a2 + b2, m)};
        auto with = [&](Constraint c) {
            auto v = base;
            v.push_back(c);
            return v;
        };
        add("T3_1", "case1", "|b'|>=2, 2<=|a'|+|b'|<=min(m,8)", "w''' + w'' >= 2w", with(ge(b1, k(2))),
            ge_claim({{1, 3}, {1, 2}}, {{2, 0}}, 0, 0));
        add("T3_1", "case2", "|b'|=1, 2<=|a'|+|b'|<=min(m,8)", "w''' + w'' >= 2w + 1", with(eq(b1, k(1))),
            ge_claim({{1, 3}, {1, 2}}, {{2, 0}}, 1, 0));
        add("T3_1", "case3", "|a'|>=2, 2<=|a'|+|b'|<=min(m,8)", "w''' + w'' >= 2w + 2", with(ge(a1, k(2))),
            ge_claim({{1, 3}, {1, 2}}, {{2, 0}}, 2, 0));
    }
    {
        std::vector<Constraint> base{eq(a1 + a2, a), eq(b1 + b2, b), ge(ord1, k(9)), eq(a3, a2), eq(b3, b2 + 2)};
        auto with = [&](Constraint c) {
            auto v = base;
            v.push_back(c);
            return v;
        };
        add("T3_2", "case1", "|b'|>=2, |a'|+|b'|>=9, b'''=b''+2", "w(a'',b''') >= w + 3 + 2delta",
            with(ge(b1, k(2))), ge_claim({{1, 3}}, {{1, 0}}, 3, 2));
        add("T3_2", "case2", "|b'|=1, |a'|+|b'|>=9, b'''=b''+2", "w(a'',b''') >= w + 4 + 2delta",
            with(eq(b1, k(1))), ge_claim({{1, 3}}, {{1, 0}}, 4, 2));
        add("T3_2", "case3", "|b'|=0, |a'|+|b'|>=9, b'''=b''+2", "w(a'',b''') >= w + 5 + 2delta",
            with(eq(b1, k(0))), ge_claim({{1, 3}}, {{1, 0}}, 5, 2));
    }
    {
        std::vector<Constraint> base{eq(a1 + a2, a), eq(b1 + b2, b), eq(ord1, k(1)), eq(a3, a2), eq(b3, b2 + 1)};
        auto with = [&](Constraint c) {
            auto v = base;
            v.push_back(c);
            return v;
        };
        add("T3_3", "case1", "|b'|=1, |a'|=0, b'''=b''+1", "w(a'',b''') = w", with(eq(b1, k(1))),
            eq_claim({{1, 3}}, {{1, 0}}, 0, 0));
        add("T3_3", "case2", "|a'|=1, |b'|=0, b'''=b''+1", "w(a'',b''') = w + 1", with(eq(a1, k(1))),
            eq_claim({{1, 3}}, {{1, 0}}, 1, 0));
    }
    {
        std::vector<Constraint> base{le(a1 + a2, a), le(b1 + b2, b)};
        auto with = [&](Constraint c) {
            auto v = base;
            v.push_back(c);
            return v;
        };
        add("T4", "case1", "|a'|+|a''|<=|a|, |b'|+|b''|<=|b|, |a'|+|b'|<=8", "w'' >= w", with(le(ord1, k(8))),
            ge_claim({{1, 2}}, {{1, 0}}, 0, 0));
        add("T4", "case2", "|a'|+|a''|<=|a|, |b'|+|b''|<=|b|, |a'|+|b'|>=9", "w'' >= w + 3 + 2delta",
            with(ge(ord1, k(9))), ge_claim({{1, 2}}, {{1, 0}}, 3, 2));
    }
    {
        std::vector<Constraint> base{eq(a1 + a2, a), eq(b1 + b2, b + 1), ge(ord1, k(1)), le(ord1, m)};
        auto with = [&](Constraint c1, Constraint c2) {
            auto v = base;
            v.push_back(c1);
            v.push_back(c2);
            return v;
        };
        add("T5_1", "case1a", "|a'|+|b'|<=8, |b'|>=1, b'+b''=b+1", "w'' >= w", with(le(ord1, k(8)), ge(b1, k(1))),
            ge_claim({{1, 2}}, {{1, 0}}, 0, 0));
        add("T5_1", "case1b", "|a'|+|b'|<=8, |b'|=0, b'+b''=b+1", "w'' >= w + 1",
            with(le(ord1, k(8)), eq(b1, k(0))), ge_claim({{1, 2}}, {{1, 0}}, 1, 0));
        add("T5_1", "case2a", "|a'|+|b'|>=9, |b'|>=1, b'+b''=b+1", "w'' >= w + 3 + 2delta",
            with(ge(ord1, k(9)), ge(b1, k(1))), ge_claim({{1, 2}}, {{1, 0}}, 3, 2));
        add("T5_1", "case2b", "|a'|+|b'|>=9, |b'|=0, b'+b''=b+1", "w'' >= w + 4 + 2delta",
            with(ge(ord1, k(9)), eq(b1, k(0))), ge_claim({{1, 2}}, {{1, 0}}, 4, 2));
    }
    add("T5_2", "no split", "a''=a, b''=b", "w + w'' >= 2w", {eq(a2, a), eq(b2, b)},
        ge_claim({{1, 0}, {1, 2}}, {{2, 0}}, 0, 0));
    {
        std::vector<Constraint> base{le(a1 + a2, a), le(b1 + b2, b), ge(ord1, k(1))};
        auto with = [&](Constraint c1, Constraint c2) {
            auto v = base;
            v.push_back(c1);
            v.push_back(c2);
            return v;
        };
        add("T6_1", "case1a", "|a'|+|b'|<=8, |b'|>=1", "w'' >= w", with(le(ord1, k(8)), ge(b1, k(1))),
            ge_claim({{1, 2}}, {{1, 0}}, 0, 0));
        add("T6_1", "case1b", "|a'|+|b'|<=8, |b'|=0", "w'' >= w + 1", with(le(ord1, k(8)), eq(b1, k(0))),
            ge_claim({{1, 2}}, {{1, 0}}, 1, 0));
        add("T6_1", "case2a", "|a'|+|b'|>=9, |b'|>=1", "w'' >= w + 3 + 2delta", with(ge(ord1, k(9)), ge(b1, k(1))),
            ge_claim({{1, 2}}, {{1, 0}}, 3, 2));
        add("T6_1", "case2b", "|a'|+|b'|>=9, |b'|=0", "w'' >= w + 4 + 2delta", with(ge(ord1, k(9)), eq(b1, k(0))),
            ge_claim({{1, 2}}, {{1, 0}}, 4, 2));
    }
    add("T6_2", "case1", "|a'|+|a''|<=|a|, |b'|+|b''|<=|b|, |a'|+|b'|<=8", "w'' >= w",
        {le(a1 + a2, a), le(b1 + b2, b), le(ord1, k(8))}, ge_claim({{1, 2}}, {{1, 0}}, 0, 0));
    add("T6_2", "case2", "|a'|+|a''|<=|a|, |b'|+|b''|<=|b|, |a'|+|b'|>=9", "w'' >= w + 3 + 2delta",
        {le(a1 + a2, a), le(b1 + b2, b), ge(ord1, k(9))}, ge_claim({{1, 2}}, {{1, 0}}, 3, 2));

    add("A2", "exponent", "no split", "(2w - 2) + 2 <= 2w", {},
        {{{2, 0}}, {{2, 0}}, Rational(0), 0, Rel::LE});

    {
        std::vector<Constraint> base{eq(a1 + a2 + a3, 2 * a), eq(b1 + b2 + b3, 2 * b + 1), eq(a2 + b2, m),
                                     eq(ord1, k(1))};
        auto with = [&](Constraint c) {
            auto v = base;
            v.push_back(c);
            return v;
        };
        add("B4", "case1", "|b'|=1, |a'|=0", "w'' + w''' = 2w", with(eq(b1, k(1))),
            eq_claim({{1, 2}, {1, 3}}, {{2, 0}}, 0, 0));
        add("B4", "case2", "|a'|=1, |b'|=0", "w'' + w''' = 2w + 1", with(eq(a1, k(1))),
            eq_claim({{1, 2}, {1, 3}}, {{2, 0}}, 1, 0));
    }
    add("shift9", "x-shift", "|a''| <= |a'''| <= |a''|+2, b'''=b''", "w(a''',b'') >= w(a'',b'') - 3 - 2delta",
        {ge(a3, a2), le(a3, a2 + 2), eq(b3, b2), le(a2 + b2, k(10))}, ge_claim({{1, 3}}, {{1, 2}}, -3, -2));
    add("viscous", "x-gain", "a'=a+1, b'=b", "2w(a',b') + 1 + 2delta <= 2w", {eq(a1, a + 1), eq(b1, b)},
        {{{2, 1}}, {{2, 0}}, Rational(-1), -2, Rel::LE});
    add("viscous", "v-gain", "a'=a, b'=b+1", "2w(a',b') + 1 + 2delta <= 2w", {eq(a1, a), eq(b1, b + 1)},
        {{{2, 1}}, {{2, 0}}, Rational(-1), -2, Rel::LE});
    return cs;
}

}  // namespace

const std::vector<CaseSpec>& proposition_cases() {
    static const std::vector<CaseSpec> cases = build_cases();
    return cases;
}

}  // namespace audit

namespace {

using audit::kVarCount;

struct Enumerator {
    const WeightHierarchy& h;
    const audit::CaseSpec& spec;
    // constraints bucketed by the deepest variable they mention
    std::array<std::vector<const audit::Constraint*>, kVarCount> at_depth;
    std::array<bool, kVarCount> used{};
    std::array<int, kVarCount> val{};
    int primed_cap = 0;
    AuditCaseResult result;
    std::vector<AuditViolation>* violations = nullptr;
    long long* violation_total = nullptr;

    Enumerator(const WeightHierarchy& hh, const audit::CaseSpec& s) : h(hh), spec(s) {
        for (const auto& c : spec.constraints) {
            int deepest = -1;
            for (int i = 0; i < kVarCount; ++i) {
                if (c.diff.coeff[i] != 0) {
                    deepest = i;
                    used[i] = true;
                }
            }
            at_depth[std::max(deepest, 0)].push_back(&c);
        }
        auto mark = [&](const std::vector<audit::WeightTerm>& ts) {
            for (const auto& t : ts) {
                used[2 * t.pair] = true;
                used[2 * t.pair + 1] = true;
            }
        };
        mark(spec.claim.lhs);
        mark(spec.claim.rhs);
        primed_cap = h.max_order + kAuditPrimedSlack;
        result.proposition = spec.proposition;
        result.name = spec.name;
        result.condition = spec.condition;
        result.claim = spec.claim_text;
    }

    bool satisfied(const audit::Constraint& c) const {
        long long s = c.diff.constant;
        for (int i = 0; i < kVarCount; ++i) s += static_cast<long long>(c.diff.coeff[i]) * val[i];
        switch (c.rel) {
            case audit::Rel::LE: return s <= 0;
            case audit::Rel::GE: return s >= 0;
            case audit::Rel::EQ: return s == 0;
        }
        return false;
    }

    Rational side(const std::vector<audit::WeightTerm>& ts) const {
        Rational s(0);
        for (const auto& t : ts) s += Rational(t.coeff) * h.affine(val[2 * t.pair], val[2 * t.pair + 1]);
        return s;
    }

    void check() {
        ++result.count;
        const auto& cl = spec.claim;
        Rational lhs = side(cl.lhs);
        Rational rhs = side(cl.rhs) + cl.rhs_const + Rational(cl.rhs_delta) * h.params.delta();
        Rational slack(0);
        bool ok = true;
        switch (cl.rel) {
            case audit::Rel::GE: slack = lhs - rhs; ok = slack >= Rational(0); break;
            case audit::Rel::LE: slack = rhs - lhs; ok = slack >= Rational(0); break;
            case audit::Rel::EQ: slack = lhs - rhs; ok = slack == Rational(0); if (slack < Rational(0)) slack = -slack; break;
        }
        if (!result.has_slack || slack < result.min_slack) {
            result.min_slack = slack;
            result.has_slack = true;
        }
        if (!ok) {
            ++*violation_total;
            if (violations->size() < kAuditViolationListCap)
                violations->push_back({spec.proposition, spec.name, val, lhs, rhs});
        }
    }

    void recurse(int depth) {
        if (depth == kVarCount) {
            check();
            return;
        }
        int hi = 0;
        if (used[depth]) {
            bool second = depth % 2 == 1;
            int cap = depth < 2 ? h.max_order : primed_cap;
            hi = second ? cap - val[depth - 1] : cap;
        }
        for (int x = 0; x <= hi; ++x) {
            val[depth] = x;
            bool ok = true;
            for (const auto* c : at_depth[depth]) {
                if (!satisfied(*c)) {
                    ok = false;
                    break;
                }
            }
            if (ok) recurse(depth + 1);
        }
        val[depth] = 0;
    }
};

}  // namespace

AuditReport check_split_inequalities(const WeightHierarchy& h, const std::vector<audit::CaseSpec>& cases) {
    AuditReport rep;
    rep.gamma = h.params.gamma;
    rep.eta = h.params.eta;
    rep.delta = h.params.delta();
    rep.base = h.base;
    rep.max_order = h.max_order;
    for (const auto& spec : cases) {
        Enumerator e(h, spec);
        e.violations = &rep.violations;
        e.violation_total = &rep.total_violations;
        e.recurse(0);
        rep.total_cases += e.result.count;
        rep.cases.push_back(std::move(e.result));
    }
    return rep;
}

AuditReport check_split_inequalities(const WeightHierarchy& h) {
    return check_split_inequalities(h, audit::proposition_cases());
}

}  // namespace landau
